//! Closed forms for the q-Pochhammer ratio moments `c(n, a, b, Q)` and
//! their classical limit `u(n, a, b, c)`: the zero-s parameters `T(k)`,
//! the triangle entries `A(n, k)`, and the Hankel determinants, plus the
//! registry of specialised determinant evaluations in [`registry`].

mod registry;

pub use registry::{
    bridge_scale, cbqm_unsimplified, closed_form, defining_matrix, even_binomial_matrix, FormulaId,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{FieldElem, Rational};
use crate::qcalc::{q_binomial_in, q_pochhammer, QBase};
use crate::sequences::binomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("pole in {0}")]
    PoleInFormula(String),
    #[error("formula {0} needs the parameter {1}")]
    MissingParameter(String, &'static str),
}

/// The `(a, b, Q)` of a q-family instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThmParams {
    pub a: FieldElem,
    pub b: FieldElem,
    pub base: QBase,
}

impl ThmParams {
    pub fn new(a: FieldElem, b: FieldElem, base: QBase) -> Self {
        ThmParams { a, b, base }
    }

    /// `Q^k a`.
    fn a_shift(&self, k: i64) -> FieldElem {
        self.base.pow(k).mul(&self.a)
    }

    fn b_shift(&self, k: i64) -> FieldElem {
        self.base.pow(k).mul(&self.b)
    }
}

/// Numerator and denominator kept apart until a single final division,
/// so that a vanishing factor is reported as a pole.
pub(crate) struct Quotient {
    num: FieldElem,
    den: FieldElem,
}

impl Quotient {
    pub(crate) fn new() -> Self {
        Quotient {
            num: FieldElem::one(),
            den: FieldElem::one(),
        }
    }

    pub(crate) fn times(&mut self, x: &FieldElem) -> &mut Self {
        self.num = self.num.mul(x);
        self
    }

    pub(crate) fn over(&mut self, x: &FieldElem) -> &mut Self {
        self.den = self.den.mul(x);
        self
    }

    pub(crate) fn finish(&self, what: &str) -> Result<FieldElem, FormulaError> {
        self.num
            .div(&self.den)
            .map_err(|_| FormulaError::PoleInFormula(what.to_string()))
    }
}

fn one_minus(x: &FieldElem) -> FieldElem {
    FieldElem::one().sub(x)
}

pub(crate) fn choose2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

pub(crate) fn choose3(n: usize) -> i64 {
    (n * n.saturating_sub(1) * n.saturating_sub(2) / 6) as i64
}

/// `c(n, a, b, Q) = (b; Q)_n / (a; Q)_n`.
pub fn c_value(
    n: usize,
    a: &FieldElem,
    b: &FieldElem,
    base: &QBase,
) -> Result<FieldElem, FormulaError> {
    Quotient::new()
        .times(&q_pochhammer(b, base, n))
        .over(&q_pochhammer(a, base, n))
        .finish("c(n, a, b, Q)")
}

/// The zero-s parameter `T(k)` of the q-family.
///
/// The `k = 0` value is taken in reduced form `(1 - b)/(1 - a)`; the general
/// even expression has the factor `1 - a/Q` in numerator and denominator.
pub fn thm1_t(k: usize, p: &ThmParams) -> Result<FieldElem, FormulaError> {
    let n = (k / 2) as i64;
    let mut f = Quotient::new();
    if k == 0 {
        f.times(&one_minus(&p.b)).over(&one_minus(&p.a));
    } else if k.is_multiple_of(2) {
        f.times(&p.base.pow(n))
            .times(&one_minus(&p.b_shift(n)))
            .times(&one_minus(&p.a_shift(n - 1)))
            .over(&one_minus(&p.a_shift(2 * n - 1)))
            .over(&one_minus(&p.a_shift(2 * n)));
    } else {
        f.times(&p.base.pow(n))
            .times(&one_minus(&p.base.pow(n + 1)))
            .times(&p.b.sub(&p.a_shift(n)))
            .over(&one_minus(&p.a_shift(2 * n + 1)))
            .over(&one_minus(&p.a_shift(2 * n)));
    }
    f.finish(&format!("T({k})"))
}

/// `A(n, k)` of the zero-s triangle driven by [`thm1_t`]; zero unless
/// `k <= n` and `n = k (mod 2)`.
pub fn thm1_a(n: usize, k: usize, p: &ThmParams) -> Result<FieldElem, FormulaError> {
    if k > n || (n - k) % 2 == 1 {
        return Ok(FieldElem::zero());
    }
    let (nn, kk) = (n / 2, k / 2);
    let (a, b) = if n.is_multiple_of(2) {
        (p.a_shift(2 * kk as i64), p.b_shift(kk as i64))
    } else {
        (p.a_shift(2 * kk as i64 + 1), p.b_shift(kk as i64 + 1))
    };
    let binom = q_binomial_in(nn as i64, kk as i64, &p.base).expect("nonnegative index");
    Ok(binom.mul(&c_value(nn - kk, &a, &b, &p.base)?))
}

/// The two residuals that vanish iff [`thm1_a`] satisfies the zero-s
/// recurrence at `(2n+2, 2k)` and `(2n+1, 2k+1)`:
///
/// ```text
/// A(2n+2, 2k) - A(2n+1, 2k-1) - T(2k) A(2n+1, 2k+1)
/// A(2n+1, 2k+1) - A(2n, 2k) - T(2k+1) A(2n, 2k+2)
/// ```
pub fn thm1_residuals(
    n: usize,
    k: usize,
    p: &ThmParams,
) -> Result<(FieldElem, FieldElem), FormulaError> {
    let lower = if k == 0 {
        FieldElem::zero()
    } else {
        thm1_a(2 * n + 1, 2 * k - 1, p)?
    };
    let r_even = thm1_a(2 * n + 2, 2 * k, p)?
        .sub(&lower)
        .sub(&thm1_t(2 * k, p)?.mul(&thm1_a(2 * n + 1, 2 * k + 1, p)?));
    let r_odd = thm1_a(2 * n + 1, 2 * k + 1, p)?
        .sub(&thm1_a(2 * n, 2 * k, p)?)
        .sub(&thm1_t(2 * k + 1, p)?.mul(&thm1_a(2 * n, 2 * k + 2, p)?));
    Ok((r_even, r_odd))
}

/// `det(c(i + j + m, a, b, Q))_{0 <= i, j < n}` in closed form.
pub fn thm2_det(n: usize, m: usize, p: &ThmParams) -> Result<FieldElem, FormulaError> {
    assert!(n >= 1, "determinant order must be positive");
    let base = &p.base;
    let mut f = Quotient::new();
    f.times(&base.pow(2 * choose3(n) + m as i64 * choose2(n)));
    for k in 1..n {
        f.times(&q_pochhammer(&p.b, base, k))
            .times(&q_pochhammer(base.value(), base, k))
            .over(&q_pochhammer(&p.a_shift(k as i64 - 1), base, k))
            .over(&q_pochhammer(&p.a, base, 2 * k));
        for j in 0..k {
            f.times(&p.b.sub(&p.a_shift(j as i64)));
        }
    }
    for j in 0..m {
        f.times(&q_pochhammer(&p.b_shift(j as i64), base, n))
            .over(&q_pochhammer(&p.a_shift((n - 1 + j) as i64), base, n));
    }
    f.finish(&format!("d({n}, {m})"))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rat_div(
    num: Rational,
    den: Rational,
    what: impl FnOnce() -> String,
) -> Result<Rational, FormulaError> {
    if den.is_zero() {
        Err(FormulaError::PoleInFormula(what()))
    } else {
        Ok(num / den)
    }
}

/// `u(n, a, b, c) = prod_{j<n} (b + jc) / (a + jc)`.
pub fn u_value(
    n: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<Rational, FormulaError> {
    let mut num = Rational::one();
    let mut den = Rational::one();
    for j in 0..n as i64 {
        num *= b + int(j) * c;
        den *= a + int(j) * c;
    }
    rat_div(num, den, || "u(n, a, b, c)".into())
}

/// Classical limit of [`thm1_t`].
pub fn cor1_t(
    k: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<Rational, FormulaError> {
    let n = int((k / 2) as i64);
    let one = Rational::one();
    let (num, den) = if k == 0 {
        (b.clone(), a.clone())
    } else if k.is_multiple_of(2) {
        (
            (a + (&n - &one) * c) * (b + &n * c),
            (a + int(2) * &n * c) * (a + (int(2) * &n - &one) * c),
        )
    } else {
        (
            (&n + &one) * c * (a - b + &n * c),
            (a + int(2) * &n * c) * (a + (int(2) * &n + &one) * c),
        )
    };
    rat_div(num, den, || format!("T({k})"))
}

/// Classical limit of [`thm1_a`].
pub fn cor1_a(
    n: usize,
    k: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<Rational, FormulaError> {
    if k > n || (n - k) % 2 == 1 {
        return Ok(Rational::zero());
    }
    let (nn, kk) = (n / 2, k / 2);
    let kr = int(kk as i64);
    let (a2, b2) = if n.is_multiple_of(2) {
        (a + int(2) * &kr * c, b + &kr * c)
    } else {
        (a + (int(2) * &kr + int(1)) * c, b + (&kr + int(1)) * c)
    };
    let binom = Rational::from_integer(binomial(nn as u64, kk as u64));
    Ok(binom * u_value(nn - kk, &a2, &b2, c)?)
}

/// `det(u(i + j + m, a, b, c))_{0 <= i, j < n}` in closed form.
pub fn cor2_det(
    n: usize,
    m: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<Rational, FormulaError> {
    assert!(n >= 1, "determinant order must be positive");
    let mut num = Rational::one();
    let mut den = Rational::one();
    let mut fact = Rational::one();
    for k in 1..n as i64 {
        fact *= int(k);
        num *= &fact * num_traits::pow(c.clone(), k as usize);
        for j in 0..k {
            num *= (b + int(j) * c) * (a - b + int(j) * c);
            den *= a + int(j + k - 1) * c;
        }
        for j in 0..2 * k {
            den *= a + int(j) * c;
        }
    }
    let n_i = n as i64;
    for j in 0..m as i64 {
        for i in 0..n_i {
            num *= b + int(j + i) * c;
            den *= a + int(i + n_i + j - 1) * c;
        }
    }
    rat_div(num, den, || format!("D({n}, {m})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field_expr, rat};
    use crate::hankel::{det_exact, hankel_matrix};
    use crate::sequences::MomentSeq;
    use crate::triangle::{build_zero_s_triangle, TSeq};

    fn e(s: &str) -> FieldElem {
        parse_field_expr(s).unwrap()
    }

    fn cb_params() -> ThmParams {
        ThmParams::new(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2))
    }

    fn andrews_params() -> ThmParams {
        ThmParams::new(FieldElem::q_pow(4), FieldElem::q(), QBase::q_pow(2))
    }

    #[test]
    fn t_values_for_central_binomial_family() {
        let p = cb_params();
        assert_eq!(thm1_t(0, &p).unwrap(), e("1/(1+q)"));
        for k in 1..=8usize {
            let want = FieldElem::q_pow(k as i64)
                .div(&e(&format!("(1+q^{k})*(1+q^{})", k + 1)))
                .unwrap();
            assert_eq!(thm1_t(k, &p).unwrap(), want, "k={k}");
        }
    }

    #[test]
    fn t0_is_reduced_first_moment() {
        let p = ThmParams::new(FieldElem::q(), FieldElem::q_pow(3), QBase::q());
        assert_eq!(thm1_t(0, &p).unwrap(), e("(1-q^3)/(1-q)"));
        let c1 = c_value(1, &p.a, &p.b, &p.base).unwrap();
        assert_eq!(thm1_t(0, &p).unwrap(), c1);
    }

    #[test]
    fn a_matches_recurrence_and_moments() {
        for p in [cb_params(), andrews_params()] {
            let t = TSeq::from_fn(11, |k| thm1_t(k, &p).unwrap());
            let tri = build_zero_s_triangle(&t, 10);
            for n in 0..=10 {
                for k in 0..=n {
                    assert_eq!(thm1_a(n, k, &p).unwrap(), tri.get(n, k as i64), "({n},{k})");
                }
            }
            for n in 0..5 {
                assert_eq!(
                    thm1_a(2 * n, 0, &p).unwrap(),
                    c_value(n, &p.a, &p.b, &p.base).unwrap()
                );
            }
        }
        assert_eq!(thm1_a(0, 0, &cb_params()).unwrap(), FieldElem::one());
        assert!(thm1_a(3, 2, &cb_params()).unwrap().is_zero());
        assert!(thm1_a(2, 3, &cb_params()).unwrap().is_zero());
    }

    #[test]
    fn residuals_vanish() {
        let p = ThmParams::new(
            FieldElem::q_pow(3),
            FieldElem::from_rational(rat(2, 3)),
            QBase::q(),
        );
        for n in 0..=4 {
            for k in 0..=4 {
                let (r1, r2) = thm1_residuals(n, k, &p).unwrap();
                assert!(r1.is_zero() && r2.is_zero(), "({n},{k})");
            }
        }
    }

    #[test]
    fn thm2_small_values() {
        let p = cb_params();
        assert_eq!(thm2_det(1, 0, &p).unwrap(), FieldElem::one());
        assert_eq!(thm2_det(2, 0, &p).unwrap(), e("q/((1+q)^2*(1+q^2))"));
        for (a, b) in [(rat(1, 2), rat(1, 3)), (rat(-2, 5), rat(3, 1))] {
            let (af, bf) = (FieldElem::from_rational(a), FieldElem::from_rational(b));
            let p = ThmParams::new(af.clone(), bf.clone(), QBase::q());
            let one = FieldElem::one();
            let num = one
                .sub(&bf)
                .mul(&one.sub(&FieldElem::q()))
                .mul(&bf.sub(&af));
            let den = one
                .sub(&af)
                .mul(&one.sub(&af))
                .mul(&one.sub(&FieldElem::q().mul(&af)));
            assert_eq!(thm2_det(2, 0, &p).unwrap(), num.div(&den).unwrap());
        }
    }

    #[test]
    fn thm2_matches_brute_force() {
        for p in [cb_params(), andrews_params()] {
            let seq = MomentSeq::cseq(p.a.clone(), p.b.clone(), p.base.clone());
            for n in 1..=4 {
                for m in 0..=2 {
                    let h = hankel_matrix(&seq, n, m).unwrap();
                    assert_eq!(thm2_det(n, m, &p).unwrap(), det_exact(&h), "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn thm2_reports_poles() {
        let p = ThmParams::new(FieldElem::one(), FieldElem::q(), QBase::q());
        assert!(matches!(
            thm2_det(2, 0, &p),
            Err(FormulaError::PoleInFormula(_))
        ));
    }

    #[test]
    fn classical_t_and_a() {
        let (a, b, c) = (rat(4, 1), rat(1, 1), rat(2, 1));
        for k in 0..=8 {
            assert_eq!(cor1_t(k, &a, &b, &c).unwrap(), rat(1, 4));
        }
        assert_eq!(cor1_a(0, 0, &a, &b, &c).unwrap(), rat(1, 1));
        for n in 0..=5u64 {
            for k in 0..=n {
                let four = Rational::from_integer(BigInt::from(4).pow((n - k) as u32));
                let want = Rational::new(BigInt::from(2 * k + 1), BigInt::from(n + k + 1))
                    * Rational::from_integer(binomial(2 * n, n - k))
                    / four;
                assert_eq!(
                    cor1_a(2 * n as usize, 2 * k as usize, &a, &b, &c).unwrap(),
                    want
                );
            }
        }
    }

    #[test]
    fn cor2_values() {
        let (a, b, c) = (rat(7, 2), rat(1, 3), rat(5, 4));
        let want = &c * &b * (&a - &b) / (&a * &a * (&a + &c));
        assert_eq!(cor2_det(2, 0, &a, &b, &c).unwrap(), want);
        for m in 0..=4 {
            assert_eq!(
                cor2_det(1, m, &a, &b, &c).unwrap(),
                u_value(m, &a, &b, &c).unwrap()
            );
        }
        for (a, b, c) in [(4, 1, 2), (3, 1, 1), (5, 2, 3)] {
            let (a, b, c) = (int(a), int(b), int(c));
            let seq = MomentSeq::useq(a.clone(), b.clone(), c.clone());
            for n in 1..=4 {
                for m in 0..=3 {
                    let h = hankel_matrix(&seq, n, m).unwrap();
                    let d = det_exact(&h).as_rational().unwrap();
                    assert_eq!(cor2_det(n, m, &a, &b, &c).unwrap(), d, "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn catalan_limit_determinants() {
        // t = 1/16 throughout, so the determinant is 16^{-C(n,2)}
        let (a, b, c) = (int(4), int(1), int(2));
        for n in 1..=6usize {
            let want = Rational::new(BigInt::one(), BigInt::from(16).pow(choose2(n) as u32));
            assert_eq!(cor2_det(n, 0, &a, &b, &c).unwrap(), want);
        }
    }
}
