//! Summation identities over the recurrence triangles, as exact checks.
//!
//! Each `check_*` evaluates both sides in Q(q) and reports the residual;
//! nothing is assumed about the identity holding.

use std::fmt;

use serde::Serialize;

use crate::closed_forms::{c_value, thm1_a, thm1_t, FormulaError, Quotient, ThmParams};
use crate::field::FieldElem;
use crate::qcalc::{q_binomial_in, q_pochhammer, QBase};
use crate::sequences::binomial;
use crate::triangle::{build_zero_s_triangle, TSeq, Triangle};

/// The identities this module can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    /// `sum_k (-1)^k a(n,k) = [n = 0]`.
    AltRowSum,
    /// `sum_k a(n,k) = C(2n, n)`.
    RowSum,
    /// `sum_k (-1)^k A(2n,2k) prod_{j<k} T(2j) = [n = 0]`.
    WeightedAltSum,
    /// `sum_k (-1)^k Q^{C(k,2)} [n,k] (1 - Q^{2k} a) / (Q^k a; Q)_{n+1} = [n = 0]`.
    QAltSum,
    /// `sum_k Q^{C(k,2)} [n,k] (1 - Q^{2k} a) / (Q^k a; Q)_{n+1} = (-1; Q)_n / (Q a; Q^2)_n`.
    QCompanionSum,
    /// `sum_k A(2n,2k) prod_{j<k} T(2j) = (b; Q)_n (-1; Q)_n / (a; Q^2)_n`.
    WeightedRowSum,
    /// The weighted row sum for Andrews' q-Catalan moments against
    /// `2 / (1 + q^{2n}) A(2n, 0, q^2, q, q^2)`.
    WeightedRowSumAndrews,
    /// The weighted row sum for `c(n, q^2, q, q^2)` against
    /// `prod_{j<n} (1 + q^{2j}) / (1 + q^{2j+1})`.
    WeightedRowSumCentral,
    /// The weighted alternating sum equals `(b; Q)_n` times the q-alternating
    /// sum at `a / Q`.
    AltSumEquivalence,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::AltRowSum => "alt-row-sum",
            IdentityId::RowSum => "row-sum",
            IdentityId::WeightedAltSum => "weighted-alt-sum",
            IdentityId::QAltSum => "q-alt-sum",
            IdentityId::QCompanionSum => "q-companion-sum",
            IdentityId::WeightedRowSum => "weighted-row-sum",
            IdentityId::WeightedRowSumAndrews => "weighted-row-sum-andrews",
            IdentityId::WeightedRowSumCentral => "weighted-row-sum-central",
            IdentityId::AltSumEquivalence => "alt-sum-equivalence",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Both sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    /// Human-readable parameter assignment, e.g. `n=3 a=q^3`.
    pub params: String,
    pub lhs: FieldElem,
    pub rhs: FieldElem,
    pub residual: FieldElem,
    pub holds: bool,
}

impl IdentityReport {
    pub fn new(id: IdentityId, params: String, lhs: FieldElem, rhs: FieldElem) -> Self {
        let residual = lhs.sub(&rhs);
        let holds = residual.is_zero();
        IdentityReport {
            id,
            params,
            lhs,
            rhs,
            residual,
            holds,
        }
    }
}

fn sign(k: usize) -> FieldElem {
    FieldElem::from_i64(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn indicator(b: bool) -> FieldElem {
    if b {
        FieldElem::one()
    } else {
        FieldElem::zero()
    }
}

/// # Panics
/// If the triangle does not reach row `n`.
pub fn check_alt_sum(tri: &Triangle, n: usize) -> IdentityReport {
    let lhs = tri
        .row(n)
        .iter()
        .enumerate()
        .fold(FieldElem::zero(), |acc, (k, v)| acc.add(&sign(k).mul(v)));
    IdentityReport::new(
        IdentityId::AltRowSum,
        format!("n={n}"),
        lhs,
        indicator(n == 0),
    )
}

/// # Panics
/// If the triangle does not reach row `n`.
pub fn check_row_sum(tri: &Triangle, n: usize) -> IdentityReport {
    let lhs = FieldElem::sum(tri.row(n));
    let rhs = FieldElem::from_rational(crate::field::Rational::from_integer(binomial(
        2 * n as u64,
        n as u64,
    )));
    IdentityReport::new(IdentityId::RowSum, format!("n={n}"), lhs, rhs)
}

/// `sum_k sign(k) A(2n,2k) prod_{j<k} T(2j)` for tabulated `A` and `T`.
fn weighted_sum(
    a_even: impl Fn(usize) -> FieldElem,
    t_even: impl Fn(usize) -> FieldElem,
    n: usize,
    alternate: bool,
) -> FieldElem {
    let mut acc = FieldElem::zero();
    let mut weight = FieldElem::one();
    for k in 0..=n {
        if k > 0 {
            weight = weight.mul(&t_even(k - 1));
        }
        let mut term = a_even(k).mul(&weight);
        if alternate && k % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

/// # Panics
/// If `t` has fewer than `2n - 1` entries.
pub fn check_weighted_alt_sum(t: &TSeq, n: usize) -> IdentityReport {
    let tri = build_zero_s_triangle(t, 2 * n);
    let lhs = weighted_sum(
        |k| tri.get(2 * n, 2 * k as i64),
        |j| t.get(2 * j).clone(),
        n,
        true,
    );
    IdentityReport::new(
        IdentityId::WeightedAltSum,
        format!("n={n}"),
        lhs,
        indicator(n == 0),
    )
}

/// The weighted alternating sum with `A` and `T` from the closed forms.
pub fn weighted_alt_sum_closed(p: &ThmParams, n: usize) -> Result<FieldElem, FormulaError> {
    let a = (0..=n)
        .map(|k| thm1_a(2 * n, 2 * k, p))
        .collect::<Result<Vec<_>, _>>()?;
    let t = (0..n)
        .map(|j| thm1_t(2 * j, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(weighted_sum(|k| a[k].clone(), |j| t[j].clone(), n, true))
}

/// The summands `Q^{C(k,2)} [n,k] (1 - Q^{2k} a) / (Q^k a; Q)_{n+1}`,
/// unsigned, for `k = 0..=n`.
///
/// The factor `1 - Q^{2k} a` also occurs in the denominator and is
/// cancelled first, so only `prod_{j != k} (1 - Q^{k+j} a)` must be nonzero.
pub fn q_sum_terms(a: &FieldElem, base: &QBase, n: usize) -> Result<Vec<FieldElem>, FormulaError> {
    (0..=n)
        .map(|k| {
            let mut f = Quotient::new();
            f.times(&base.pow((k * k.saturating_sub(1) / 2) as i64))
                .times(&q_binomial_in(n as i64, k as i64, base).expect("nonnegative index"));
            for j in (0..=n).filter(|&j| j != k) {
                f.over(&FieldElem::one().sub(&base.pow((k + j) as i64).mul(a)));
            }
            f.finish(&format!("summand k={k}"))
        })
        .collect()
}

/// `sum_k (-1)^k` of [`q_sum_terms`].
pub fn q_alt_sum(a: &FieldElem, base: &QBase, n: usize) -> Result<FieldElem, FormulaError> {
    Ok(q_sum_terms(a, base, n)?
        .iter()
        .enumerate()
        .fold(FieldElem::zero(), |acc, (k, t)| acc.add(&sign(k).mul(t))))
}

pub fn check_q_alt_sum(
    a: &FieldElem,
    base: &QBase,
    n: usize,
) -> Result<IdentityReport, FormulaError> {
    Ok(IdentityReport::new(
        IdentityId::QAltSum,
        format!("n={n} a={a} Q={}", base.value()),
        q_alt_sum(a, base, n)?,
        indicator(n == 0),
    ))
}

pub fn check_q_companion_sum(
    a: &FieldElem,
    base: &QBase,
    n: usize,
) -> Result<IdentityReport, FormulaError> {
    let lhs = FieldElem::sum(&q_sum_terms(a, base, n)?);
    let q2 = QBase::new(base.pow(2));
    let rhs = Quotient::new()
        .times(&q_pochhammer(&FieldElem::from_i64(-1), base, n))
        .over(&q_pochhammer(&base.value().mul(a), &q2, n))
        .finish("companion right side")?;
    Ok(IdentityReport::new(
        IdentityId::QCompanionSum,
        format!("n={n} a={a} Q={}", base.value()),
        lhs,
        rhs,
    ))
}

fn weighted_row_sum(p: &ThmParams, n: usize) -> Result<FieldElem, FormulaError> {
    let a = (0..=n)
        .map(|k| thm1_a(2 * n, 2 * k, p))
        .collect::<Result<Vec<_>, _>>()?;
    let t = (0..n)
        .map(|j| thm1_t(2 * j, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(weighted_sum(|k| a[k].clone(), |j| t[j].clone(), n, false))
}

fn weighted_row_rhs(p: &ThmParams, n: usize) -> Result<FieldElem, FormulaError> {
    let q2 = QBase::new(p.base.pow(2));
    Quotient::new()
        .times(&q_pochhammer(&p.b, &p.base, n))
        .times(&q_pochhammer(&FieldElem::from_i64(-1), &p.base, n))
        .over(&q_pochhammer(&p.a, &q2, n))
        .finish("weighted row sum right side")
}

fn describe(p: &ThmParams) -> String {
    format!("a={} b={} Q={}", p.a, p.b, p.base.value())
}

pub fn check_weighted_row_sum(p: &ThmParams, n: usize) -> Result<IdentityReport, FormulaError> {
    Ok(IdentityReport::new(
        IdentityId::WeightedRowSum,
        format!("n={n} {}", describe(p)),
        weighted_row_sum(p, n)?,
        weighted_row_rhs(p, n)?,
    ))
}

/// The two displayed special cases of the weighted row sum: the general
/// right side is compared with the displayed closed form, and the sum with
/// both. Returns the reports for `(q^4, q, q^2)` and `(q^2, q, q^2)`.
pub fn check_weighted_row_sum_specials(n: usize) -> Result<[IdentityReport; 2], FormulaError> {
    let q = FieldElem::q();
    let q2 = QBase::q_pow(2);

    let andrews = ThmParams::new(FieldElem::q_pow(4), q.clone(), q2.clone());
    let displayed = Quotient::new()
        .times(&FieldElem::from_i64(2))
        .times(&c_value(n, &FieldElem::q_pow(2), &q, &q2)?)
        .over(&FieldElem::one().add(&FieldElem::q_pow(2 * n as i64)))
        .finish("displayed special case")?;
    let general = weighted_row_rhs(&andrews, n)?;
    let sum = weighted_row_sum(&andrews, n)?;
    let first = IdentityReport::new(
        IdentityId::WeightedRowSumAndrews,
        format!("n={n} {}", describe(&andrews)),
        sum.clone(),
        displayed.clone(),
    );
    let first = if general == displayed {
        first
    } else {
        mismatch(first, general)
    };

    let central = ThmParams::new(FieldElem::q_pow(2), q, q2);
    let mut f = Quotient::new();
    for j in 0..n as i64 {
        f.times(&FieldElem::one().add(&FieldElem::q_pow(2 * j)))
            .over(&FieldElem::one().add(&FieldElem::q_pow(2 * j + 1)));
    }
    let displayed = f.finish("displayed special case")?;
    let general = weighted_row_rhs(&central, n)?;
    let second = IdentityReport::new(
        IdentityId::WeightedRowSumCentral,
        format!("n={n} {}", describe(&central)),
        weighted_row_sum(&central, n)?,
        displayed.clone(),
    );
    let second = if general == displayed {
        second
    } else {
        mismatch(second, general)
    };
    Ok([first, second])
}

/// Marks a report as failing because the general right side disagreed
/// with the displayed one, keeping the general value as the residual.
fn mismatch(mut r: IdentityReport, general: FieldElem) -> IdentityReport {
    r.residual = general.sub(&r.rhs);
    r.holds = false;
    r
}

/// The weighted alternating sum (closed-form `A`, `T`) against
/// `(b; Q)_n` times the q-alternating sum at `a / Q`.
pub fn check_alt_sum_equivalence(p: &ThmParams, n: usize) -> Result<IdentityReport, FormulaError> {
    let lhs = weighted_alt_sum_closed(p, n)?;
    let a_over_q = p.a.mul(&p.base.pow(-1));
    let rhs = q_pochhammer(&p.b, &p.base, n).mul(&q_alt_sum(&a_over_q, &p.base, n)?);
    Ok(IdentityReport::new(
        IdentityId::AltSumEquivalence,
        format!("n={n} {}", describe(p)),
        lhs,
        rhs,
    ))
}
