//! Deterministic parameter samples and random test objects.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VerifyError;
use crate::closed_forms::{thm1_t, thm2_det, ThmParams};
use crate::field::{FieldElem, Rational};
use crate::hankel::SquareMatrix;
use crate::qcalc::QBase;
use crate::triangle::JacobiParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// `a = q^i`, `b = q^j`, base `q^e`.
    QPowerPairs,
    /// Rational `a`, `b`, base `q`.
    RationalPairs,
}

/// The fixed head of the q-power enumeration: the two named families
/// first, then `(q, q^{d+1})` for `d = 1, 2, 3`.
fn q_power_head() -> Vec<(usize, usize, usize)> {
    vec![(4, 1, 2), (2, 1, 2), (1, 2, 1), (1, 3, 1), (1, 4, 1)]
}

fn q_power_space() -> Vec<(usize, usize, usize)> {
    let head = q_power_head();
    let mut rest = Vec::new();
    for e in [1, 2] {
        for i in 1..=6 {
            for j in 1..=6 {
                if i != j && !head.contains(&(i, j, e)) {
                    rest.push((i, j, e));
                }
            }
        }
    }
    head.into_iter().chain(rest).collect()
}

/// Whether every T-value and determinant up to `n_max` (shift up to
/// `m_max`) is pole-free, and the pair is not degenerate.
pub fn screen(p: &ThmParams, n_max: usize, m_max: usize) -> bool {
    if p.a.is_zero() || p.b.is_zero() || p.a == p.b || p.a.is_one() {
        return false;
    }
    (0..=2 * n_max + 2).all(|k| thm1_t(k, p).is_ok())
        && (1..=n_max).all(|n| (0..=m_max).all(|m| thm2_det(n, m, p).is_ok()))
}

/// Deterministic pole-screened samples.
///
/// q-power pairs: seed 0 walks the documented enumeration (starting with
/// `(q^4, q)` over base `q^2`); other seeds shuffle its tail. Rational
/// pairs: numerators in `-7..=7`, denominators in `1..=7`, drawn from a
/// ChaCha stream seeded with `seed`.
pub fn sample_parameters(
    kind: SampleKind,
    count: usize,
    seed: u64,
    n_max: usize,
    m_max: usize,
) -> Result<Vec<ThmParams>, VerifyError> {
    assert!(count >= 1, "count must be positive");
    let mut out: Vec<ThmParams> = Vec::with_capacity(count);
    match kind {
        SampleKind::QPowerPairs => {
            let mut space = q_power_space();
            if seed != 0 {
                let head = q_power_head().len();
                space[head..].shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
            for (i, j, e) in space {
                let p = ThmParams::new(
                    FieldElem::q_pow(i as i64),
                    FieldElem::q_pow(j as i64),
                    QBase::q_pow(e),
                );
                if screen(&p, n_max, m_max) {
                    out.push(p);
                    if out.len() == count {
                        break;
                    }
                }
            }
        }
        SampleKind::RationalPairs => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draw = |rng: &mut ChaCha8Rng| {
                let n: i64 = rng.gen_range(-7..=7);
                let d: i64 = rng.gen_range(1..=7);
                FieldElem::from_rational(Rational::new(n.into(), d.into()))
            };
            // 15 * 7 values per coordinate; generous cap on redraws
            for _ in 0..20_000 {
                let p = ThmParams::new(draw(&mut rng), draw(&mut rng), QBase::q());
                if !out.contains(&p) && screen(&p, n_max, m_max) {
                    out.push(p);
                    if out.len() == count {
                        break;
                    }
                }
            }
        }
    }
    if out.len() < count {
        return Err(VerifyError::InsufficientSamples {
            requested: count,
            found: out.len(),
        });
    }
    Ok(out)
}

fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let n: i64 = rng.gen_range(-bound..=bound);
    let d: i64 = rng.gen_range(1..=bound.max(1));
    Rational::new(n.into(), d.into())
}

/// A random element of Q(q): quotient of two polynomials of degree at most
/// 2 with coefficients in `-3..=3`, denominator nonzero.
fn small_field_elem(rng: &mut ChaCha8Rng) -> FieldElem {
    let poly = |rng: &mut ChaCha8Rng| {
        let deg = rng.gen_range(0..=2usize);
        let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        crate::field::Polynomial::from_i64s(&cs)
    };
    let num = poly(rng);
    loop {
        let den = poly(rng);
        if !den.is_zero() {
            return FieldElem::ratio(&num, &den).expect("denominator is nonzero");
        }
    }
}

/// `count` random matrices of order `1..=5`; over Q when `over_q` is false
/// (entries `p/r`, `|p|, r <= 5`), otherwise over Q(q).
pub fn random_matrices(seed: u64, count: usize, over_q: bool) -> Vec<SquareMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=5usize);
            let entries = (0..n * n)
                .map(|_| {
                    if over_q {
                        small_field_elem(&mut rng)
                    } else {
                        FieldElem::from_rational(small_rational(&mut rng, 5))
                    }
                })
                .collect();
            SquareMatrix::new(n, entries)
        })
        .collect()
}

/// `count` random rational Jacobi parameter tables of length `len`,
/// entries `p/r` in `[-3, 3]` with `|p| <= 3r`, `r <= 3`, and `t` nonzero.
pub fn random_jacobi_params(seed: u64, count: usize, len: usize) -> Vec<JacobiParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entry = move |nonzero: bool| loop {
        let d: i64 = rng.gen_range(1..=3);
        let n: i64 = rng.gen_range(-3 * d..=3 * d);
        if nonzero && n == 0 {
            continue;
        }
        return FieldElem::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)));
    };
    (0..count)
        .map(|_| {
            let s = (0..len).map(|_| entry(false)).collect();
            let t = (0..len).map(|_| entry(true)).collect();
            JacobiParams::new(s, t)
        })
        .collect()
}
