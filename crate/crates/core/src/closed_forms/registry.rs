//! Named Hankel determinant evaluations and the matrices they describe.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{choose2, choose3, FormulaError, Quotient};
use crate::field::{FieldElem, Rational};
use crate::hankel::{hankel_matrix, SquareMatrix};
use crate::qcalc::{bracket_falling, q_binomial, q_factorial, q_int, q_pochhammer, QBase};
use crate::sequences::{binomial, MomentSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    /// Shifted Catalan numbers `det(C_{i+j+m})`.
    CatalanShift,
    /// `det((x; q)_{i+j+m})`.
    QPochRows,
    /// `det([i+j+m]!)`.
    QFactorial,
    /// `det(<x>_{i+j+m})`.
    BracketFalling,
    /// `det([i+j+m choose m])`, Carlitz's evaluation.
    Carlitz,
    /// q-Hilbert matrix `det(1 / [i+j+m+1])`.
    QHilbert,
    /// `det(1 / [i+j+m])`, evaluated exactly as usually printed; the
    /// printed product contains the factor `[0]` and does not match.
    RecipBracket,
    /// Moments `c(n, q^2, q, q^2)`, unshifted.
    CBq0,
    /// Moments `c(n, q^2, q, q^2)`, shifted by `m`.
    CBqm,
    /// Shifted central binomial coefficients.
    CentralBinomial,
    /// `det(C(2i+2j+2m+1, i+j+m)) = 2^{-n} det(C(2i+2j+2m+2, i+j+m+1))`.
    OddBinomialRel,
    /// Andrews' q-Catalan moments `c(n, q^4, q, q^2)`, unshifted.
    Andrews0,
    /// Andrews' q-Catalan moments, shifted by `m`.
    Andrewsm,
}

impl FormulaId {
    pub const ALL: [FormulaId; 13] = [
        FormulaId::CatalanShift,
        FormulaId::QPochRows,
        FormulaId::QFactorial,
        FormulaId::BracketFalling,
        FormulaId::Carlitz,
        FormulaId::QHilbert,
        FormulaId::RecipBracket,
        FormulaId::CBq0,
        FormulaId::CBqm,
        FormulaId::CentralBinomial,
        FormulaId::OddBinomialRel,
        FormulaId::Andrews0,
        FormulaId::Andrewsm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::CatalanShift => "CatalanShift",
            FormulaId::QPochRows => "QPochRows",
            FormulaId::QFactorial => "QFactorial",
            FormulaId::BracketFalling => "BracketFalling",
            FormulaId::Carlitz => "Carlitz",
            FormulaId::QHilbert => "QHilbert",
            FormulaId::RecipBracket => "RecipBracket",
            FormulaId::CBq0 => "CBq0",
            FormulaId::CBqm => "CBqm",
            FormulaId::CentralBinomial => "CentralBinomial",
            FormulaId::OddBinomialRel => "OddBinomialRel",
            FormulaId::Andrews0 => "Andrews0",
            FormulaId::Andrewsm => "Andrewsm",
        }
    }

    /// Whether the formula takes the rational parameter `x`.
    pub fn needs_x(self) -> bool {
        matches!(self, FormulaId::QPochRows | FormulaId::BracketFalling)
    }

    /// Whether the shift `m` is a genuine parameter; the unshifted
    /// variants ignore it.
    pub fn uses_m(self) -> bool {
        !matches!(self, FormulaId::CBq0 | FormulaId::Andrews0)
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown formula '{s}'"))
    }
}

fn x_param(id: FormulaId, x: Option<&Rational>) -> Result<&Rational, FormulaError> {
    x.ok_or_else(|| FormulaError::MissingParameter(id.name().to_string(), "x"))
}

fn int(n: i64) -> FieldElem {
    FieldElem::from_i64(n)
}

fn sign(e: i64) -> FieldElem {
    int(if e % 2 == 0 { 1 } else { -1 })
}

fn q_pow(e: i64) -> FieldElem {
    FieldElem::q_pow(e)
}

/// `-q^k`.
fn neg_q_pow(k: i64) -> FieldElem {
    q_pow(k).neg()
}

/// `prod_{j<m} prod_{i=1}^{j} [top(i, j)] / [i + j]` over `q`-integers,
/// with `base_int` choosing plain or q-integers.
fn double_ratio(
    m: usize,
    top: impl Fn(usize, usize) -> usize,
    base_int: impl Fn(usize) -> FieldElem,
    f: &mut Quotient,
) {
    for j in 0..m {
        for i in 1..=j {
            f.times(&base_int(top(i, j))).over(&base_int(i + j));
        }
    }
}

/// `q^{n(n-1)(4n-5)/6} / prod_{j=1}^{2n-2} (1 + q^j)^{2n-1-j}`.
fn cbq0(n: usize) -> Result<FieldElem, FormulaError> {
    let n_i = n as i64;
    let mut f = Quotient::new();
    f.times(&q_pow(n_i * (n_i - 1) * (4 * n_i - 5) / 6));
    for j in 1..=(2 * n_i - 2) {
        let factor = FieldElem::one().add(&q_pow(j));
        f.over(
            &factor
                .pow_int(2 * n_i - 1 - j)
                .expect("nonnegative exponent"),
        );
    }
    f.finish("CBq0")
}

/// `q^{n(n-1)(4n-5)/6} / ((1+q)^{n-1} prod_{j=0}^{2n-3} (1 + q^{j+2})^{2n-2-j})`.
fn andrews0(n: usize) -> Result<FieldElem, FormulaError> {
    let n_i = n as i64;
    let mut f = Quotient::new();
    f.times(&q_pow(n_i * (n_i - 1) * (4 * n_i - 5) / 6));
    f.over(
        &FieldElem::one()
            .add(&FieldElem::q())
            .pow_int(n_i - 1)
            .expect("n >= 1"),
    );
    for j in 0..=(2 * n_i - 3) {
        let factor = FieldElem::one().add(&q_pow(j + 2));
        f.over(
            &factor
                .pow_int(2 * n_i - 2 - j)
                .expect("nonnegative exponent"),
        );
    }
    f.finish("Andrews0")
}

/// Evaluates a registry formula at `(n, m)` and, where needed, `x`.
pub fn closed_form(
    id: FormulaId,
    n: usize,
    m: usize,
    x: Option<&Rational>,
) -> Result<FieldElem, FormulaError> {
    assert!(n >= 1, "determinant order must be positive");
    let n_i = n as i64;
    let m_i = m as i64;
    let mut f = Quotient::new();
    match id {
        FormulaId::CatalanShift => {
            for j in 1..m {
                for i in 1..=j {
                    f.times(&int((2 * n + i + j) as i64))
                        .over(&int((i + j) as i64));
                }
            }
        }
        FormulaId::QPochRows => {
            let xv = FieldElem::from_rational(x_param(id, x)?.clone());
            f.times(&q_pow(2 * choose3(n) + m_i * choose2(n)));
            f.times(&xv.pow_int(choose2(n)).expect("nonnegative exponent"));
            for k in 0..n {
                f.times(&q_pochhammer(&xv, &QBase::q(), k + m))
                    .times(&q_pochhammer(&FieldElem::q(), &QBase::q(), k));
            }
        }
        FormulaId::QFactorial => {
            f.times(&q_pow(2 * choose3(n) + (m_i + 1) * choose2(n)));
            for k in 0..n {
                f.times(&q_factorial(k + m)).times(&q_factorial(k));
            }
        }
        FormulaId::BracketFalling => {
            let xv = x_param(id, x)?;
            f.times(&sign(choose2(n)))
                .times(&q_pow(2 * choose3(n) + m_i * choose2(n)));
            for j in 0..n {
                f.times(&q_factorial(j)).times(&bracket_falling(xv, j + m));
            }
        }
        FormulaId::Carlitz => {
            f.times(&sign(choose2(n)))
                .times(&q_pow(n_i * (n_i - 1) * (n_i - 1) / 2));
            for k in 0..n_i {
                f.times(&q_binomial(m_i + k, 2 * k).expect("nonnegative index"));
                if k > 0 {
                    f.over(&q_binomial(2 * k - 1, k).expect("nonnegative index"));
                }
            }
        }
        FormulaId::QHilbert => {
            f.times(&q_pow(
                m_i * choose2(n) + n_i * (n_i - 1) * (2 * n_i - 1) / 6,
            ));
            for j in 0..m {
                let top = q_factorial(j + n);
                f.times(&top.mul(&top))
                    .over(&q_factorial(j))
                    .over(&q_factorial(2 * n + j));
            }
            for j in 0..n {
                let fj = q_factorial(j);
                f.times(&fj.mul(&fj).mul(&fj)).over(&q_factorial(n + j));
            }
        }
        FormulaId::RecipBracket => {
            f.times(&sign(choose2(n)))
                .times(&q_pow(n_i * (n_i - 1) * (n_i - 1) / 2));
            for j in 0..(n + m).saturating_sub(1) {
                f.times(&q_int(j)).over(&q_int(n + j));
            }
        }
        FormulaId::CBq0 => return cbq0(n),
        FormulaId::CBqm => {
            f.times(&q_pow(2 * m_i * choose2(n)));
            for j in 0..m {
                f.over(&q_pochhammer(
                    &neg_q_pow(j as i64 + 1),
                    &QBase::q(),
                    2 * n - 1,
                ));
            }
            double_ratio(m, |i, j| 2 * n + j + i - 1, q_int, &mut f);
            f.times(&cbq0(n)?);
        }
        FormulaId::CentralBinomial => {
            f.times(&int(2).pow_int(n_i - 1 + m_i).expect("nonnegative exponent"));
            double_ratio(m, |i, j| 2 * n + j + i - 1, |k| int(k as i64), &mut f);
        }
        FormulaId::OddBinomialRel => {
            f.times(&closed_form(FormulaId::CentralBinomial, n, m + 1, None)?)
                .over(&int(2).pow_int(n_i).expect("nonnegative exponent"));
        }
        FormulaId::Andrews0 => return andrews0(n),
        FormulaId::Andrewsm => {
            f.times(&q_pow(2 * m_i * choose2(n)));
            for j in 0..m {
                f.over(&q_pochhammer(&neg_q_pow(j as i64 + 1), &QBase::q(), 2 * n));
            }
            double_ratio(m, |i, j| 2 * n + j + i, q_int, &mut f);
            f.times(&andrews0(n)?);
        }
    }
    f.finish(id.name())
}

/// The alternative evaluation of [`FormulaId::CBqm`] before the
/// Pochhammer quotient is simplified:
/// `q^{2m C(n,2)} prod_{j<m} (q^{2j+1}; q^2)_n / (q^{2n+2j}; q^2)_n * CBq0`.
pub fn cbqm_unsimplified(n: usize, m: usize) -> Result<FieldElem, FormulaError> {
    let q2 = QBase::q_pow(2);
    let mut f = Quotient::new();
    f.times(&q_pow(2 * m as i64 * choose2(n)));
    for j in 0..m as i64 {
        f.times(&q_pochhammer(&q_pow(2 * j + 1), &q2, n))
            .over(&q_pochhammer(&q_pow(2 * n as i64 + 2 * j), &q2, n));
    }
    f.times(&cbq0(n)?);
    f.finish("CBqm (unsimplified)")
}

fn entry_matrix(
    n: usize,
    f: impl Fn(usize) -> Result<FieldElem, FormulaError>,
) -> Result<SquareMatrix, FormulaError> {
    let values = (0..2 * n.max(1) - 1)
        .map(f)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SquareMatrix::from_fn(n, |i, j| values[i + j].clone()))
}

fn from_seq(seq: MomentSeq, n: usize, m: usize) -> Result<SquareMatrix, FormulaError> {
    hankel_matrix(&seq, n, m).map_err(|e| FormulaError::PoleInFormula(e.to_string()))
}

fn binom_entry(top: usize, bottom: usize) -> FieldElem {
    FieldElem::from_rational(Rational::from_integer(binomial(top as u64, bottom as u64)))
}

/// The matrix whose determinant the formula evaluates. For
/// [`FormulaId::OddBinomialRel`] this is the odd-index binomial matrix,
/// the left side of the relation.
pub fn defining_matrix(
    id: FormulaId,
    n: usize,
    m: usize,
    x: Option<&Rational>,
) -> Result<SquareMatrix, FormulaError> {
    match id {
        FormulaId::CatalanShift => from_seq(MomentSeq::Catalan, n, m),
        FormulaId::QPochRows => {
            let xv = FieldElem::from_rational(x_param(id, x)?.clone());
            entry_matrix(n, |k| Ok(q_pochhammer(&xv, &QBase::q(), k + m)))
        }
        FormulaId::QFactorial => entry_matrix(n, |k| Ok(q_factorial(k + m))),
        FormulaId::BracketFalling => {
            let xv = x_param(id, x)?;
            entry_matrix(n, |k| Ok(bracket_falling(xv, k + m)))
        }
        FormulaId::Carlitz => entry_matrix(n, |k| {
            Ok(q_binomial((k + m) as i64, m as i64).expect("nonnegative index"))
        }),
        FormulaId::QHilbert => entry_matrix(n, |k| {
            Ok(q_int(k + m + 1).inv().expect("[k] is nonzero for k >= 1"))
        }),
        FormulaId::RecipBracket => entry_matrix(n, |k| {
            q_int(k + m)
                .inv()
                .map_err(|_| FormulaError::PoleInFormula("1/[0] entry".into()))
        }),
        FormulaId::CBq0 => from_seq(cb_seq(), n, 0),
        FormulaId::CBqm => from_seq(cb_seq(), n, m),
        FormulaId::CentralBinomial => from_seq(MomentSeq::CentralBinomial, n, m),
        FormulaId::OddBinomialRel => entry_matrix(n, |k| Ok(binom_entry(2 * (k + m) + 1, k + m))),
        FormulaId::Andrews0 => from_seq(MomentSeq::AndrewsQCatalan, n, 0),
        FormulaId::Andrewsm => from_seq(MomentSeq::AndrewsQCatalan, n, m),
    }
}

/// The right-hand matrix of the odd binomial relation,
/// `(C(2i+2j+2m+2, i+j+m+1))`.
pub fn even_binomial_matrix(n: usize, m: usize) -> SquareMatrix {
    let values: Vec<FieldElem> = (0..2 * n.max(1) - 1)
        .map(|k| binom_entry(2 * (k + m) + 2, k + m + 1))
        .collect();
    SquareMatrix::from_fn(n, |i, j| values[i + j].clone())
}

fn cb_seq() -> MomentSeq {
    MomentSeq::cseq(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2))
}

/// `4^{n(n-1) + nm}`, the scale between the q = 1 limits of the
/// `c(n, q^2, q, q^2)` / `c(n, q^4, q, q^2)` determinants and the central
/// binomial / Catalan determinants.
pub fn bridge_scale(n: usize, m: usize) -> Rational {
    Rational::from_integer(BigInt::from(4).pow((n * (n - 1) + n * m) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field_expr, rat};
    use crate::hankel::det_exact;

    fn e(s: &str) -> FieldElem {
        parse_field_expr(s).unwrap()
    }

    fn cf(id: FormulaId, n: usize, m: usize) -> FieldElem {
        closed_form(id, n, m, None).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.name().parse::<FormulaId>().unwrap(), id);
        }
        assert_eq!("carlitz".parse::<FormulaId>().unwrap(), FormulaId::Carlitz);
        assert!("Eq29".parse::<FormulaId>().is_err());
    }

    #[test]
    fn spot_values() {
        assert_eq!(cf(FormulaId::CatalanShift, 1, 3), FieldElem::from_i64(5));
        assert_eq!(cf(FormulaId::CatalanShift, 2, 2), FieldElem::from_i64(3));
        assert_eq!(cf(FormulaId::QFactorial, 2, 0), FieldElem::q());
        for x in [rat(2, 1), rat(-7, 3)] {
            let v = closed_form(FormulaId::BracketFalling, 2, 0, Some(&x)).unwrap();
            assert_eq!(v, FieldElem::from_rational(-x));
        }
        assert_eq!(cf(FormulaId::QHilbert, 2, 0), e("q/((1+q)^2*(1+q+q^2))"));
        assert_eq!(cf(FormulaId::Carlitz, 2, 1), e("-q"));
        assert_eq!(cf(FormulaId::CentralBinomial, 3, 0), FieldElem::from_i64(4));
        assert_eq!(cf(FormulaId::CBq0, 2, 0), e("q/((1+q)^2*(1+q^2))"));
        assert_eq!(
            cf(FormulaId::Andrews0, 2, 0),
            e("q/((1+q)*(1+q^2)^2*(1+q^3))")
        );
    }

    #[test]
    fn missing_x_is_an_error() {
        assert!(matches!(
            closed_form(FormulaId::QPochRows, 2, 0, None),
            Err(FormulaError::MissingParameter(_, "x"))
        ));
        assert!(defining_matrix(FormulaId::BracketFalling, 2, 0, None).is_err());
    }

    #[test]
    fn formulas_match_their_matrices() {
        let xs = [rat(2, 1), rat(3, 1), rat(5, 2)];
        for id in FormulaId::ALL {
            if matches!(id, FormulaId::RecipBracket | FormulaId::OddBinomialRel) {
                continue;
            }
            let samples: Vec<Option<&Rational>> = if id.needs_x() {
                xs.iter().map(Some).collect()
            } else {
                vec![None]
            };
            let m_max = if id.uses_m() { 2 } else { 0 };
            for x in samples {
                for n in 1..=4 {
                    for m in 0..=m_max {
                        let brute = det_exact(&defining_matrix(id, n, m, x).unwrap());
                        assert_eq!(closed_form(id, n, m, x).unwrap(), brute, "{id} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn odd_binomial_relation() {
        for n in 1..=4usize {
            for m in 0..=3 {
                let odd =
                    det_exact(&defining_matrix(FormulaId::OddBinomialRel, n, m, None).unwrap());
                let even = det_exact(&even_binomial_matrix(n, m));
                let half_n = FieldElem::from_rational(rat(1, 1 << n));
                assert_eq!(odd, half_n.mul(&even));
                assert_eq!(odd, cf(FormulaId::OddBinomialRel, n, m));
            }
        }
    }

    #[test]
    fn printed_reciprocal_bracket_formula_fails() {
        assert!(cf(FormulaId::RecipBracket, 1, 1).is_zero());
        let brute = det_exact(&defining_matrix(FormulaId::RecipBracket, 1, 1, None).unwrap());
        assert_eq!(brute, FieldElem::one());
        assert!(defining_matrix(FormulaId::RecipBracket, 2, 0, None).is_err());
        for n in 1..=3 {
            for m in 1..=3 {
                let brute =
                    det_exact(&defining_matrix(FormulaId::RecipBracket, n, m, None).unwrap());
                assert_eq!(brute, cf(FormulaId::QHilbert, n, m - 1));
            }
        }
    }

    #[test]
    fn simplified_and_unsimplified_paths_agree() {
        for n in 1..=4 {
            for m in 0..=3 {
                assert_eq!(cbqm_unsimplified(n, m).unwrap(), cf(FormulaId::CBqm, n, m));
            }
        }
    }

    #[test]
    fn q_to_one_limits() {
        let one = rat(1, 1);
        for n in 1..=3 {
            for m in 0..=2 {
                let s = bridge_scale(n, m);
                let a = cf(FormulaId::Andrewsm, n, m).specialize(&one).unwrap();
                assert_eq!(
                    a * &s,
                    cf(FormulaId::CatalanShift, n, m).as_rational().unwrap()
                );
                let c = cf(FormulaId::CBqm, n, m).specialize(&one).unwrap();
                assert_eq!(
                    c * &s,
                    cf(FormulaId::CentralBinomial, n, m).as_rational().unwrap()
                );
            }
        }
    }
}
