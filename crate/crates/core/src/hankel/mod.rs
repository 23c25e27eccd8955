//! Hankel matrices, exact determinants, and the `A D A^t` factorisation.
//!
//! For moments generated by Jacobi parameters `(s, t)` the Hankel matrix
//! `H_n = (c(i+j))` factors as `A_n D_n A_n^t` with `A_n = (a(i, j))` the
//! recurrence triangle and `D_n = diag(1, t(0), t(0)t(1), ...)`, so
//! `det H_n = prod_{i<n} prod_{k<i} t(k)`. Running the factorisation
//! backwards recovers `(s, t)` from the moments.

mod det;
mod matrix;

pub use det::{det_exact, det_with, Engine};
pub use matrix::{hankel_matrix, SquareMatrix};

use crate::field::FieldElem;
use crate::sequences::{MomentSeq, SequenceError};
use crate::triangle::JacobiParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HankelError {
    /// The leading principal minor of this order vanishes.
    #[error("leading principal minor of order {0} vanishes")]
    SingularLeadingMinor(usize),
    #[error("moment sequence is not normalised: c(0) = {0}")]
    NotNormalized(FieldElem),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// `H = A diag(D) A^t` with `A` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdltFactors {
    pub a: SquareMatrix,
    pub d: Vec<FieldElem>,
}

impl LdltFactors {
    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> SquareMatrix {
        self.a.mul_diag(&self.d).mul(&self.a.transpose())
    }
}

/// Factors a symmetric matrix without pivoting.
///
/// Only pivots that must be divided by are required to be nonzero, so the
/// last diagonal entry may vanish.
pub fn ldlt(h: &SquareMatrix) -> Result<LdltFactors, HankelError> {
    let n = h.dim();
    let mut a = SquareMatrix::identity(n);
    let mut d: Vec<FieldElem> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = h.get(j, j).clone();
        for (k, dk) in d.iter().enumerate() {
            dj = dj.sub(&a.get(j, k).mul(a.get(j, k)).mul(dk));
        }
        if j + 1 < n {
            let inv = dj
                .inv()
                .map_err(|_| HankelError::SingularLeadingMinor(j + 1))?;
            // w[k] = A[j][k] D[k], shared by every row below j
            let w: Vec<FieldElem> = (0..j).map(|k| a.get(j, k).mul(&d[k])).collect();
            for i in j + 1..n {
                let mut v = h.get(i, j).clone();
                for (k, wk) in w.iter().enumerate() {
                    v = v.sub(&a.get(i, k).mul(wk));
                }
                a.set(i, j, v.mul(&inv));
            }
        }
        d.push(dj);
    }
    Ok(LdltFactors { a, d })
}

/// Recovers `s(0..depth-1)` and `t(0..depth-1)` from the moments
/// `c(0..2 depth - 1)` by factoring `H_depth`.
pub fn jacobi_from_moments(seq: &MomentSeq, depth: usize) -> Result<JacobiParams, HankelError> {
    assert!(depth >= 1, "depth must be positive");
    let h = hankel_matrix(seq, depth, 0)?;
    if !h.get(0, 0).is_one() {
        return Err(HankelError::NotNormalized(h.get(0, 0).clone()));
    }
    let f = ldlt(&h)?;
    let t = (0..depth - 1)
        .map(|k| f.d[k + 1].div(&f.d[k]).expect("pivot checked by ldlt"))
        .collect();
    let s = (0..depth - 1)
        .map(|k| {
            let below = f.a.get(k + 1, k);
            if k == 0 {
                below.clone()
            } else {
                below.sub(f.a.get(k, k - 1))
            }
        })
        .collect();
    Ok(JacobiParams::new(s, t))
}

/// `prod_{i=1}^{n-1} prod_{k<i} t(k)`.
///
/// # Panics
/// If `t` has fewer than `n - 1` entries.
pub fn det_via_lemma(jp: &JacobiParams, n: usize) -> FieldElem {
    let mut acc = FieldElem::one();
    for k in 0..n.saturating_sub(1) {
        let e = (n - 1 - k) as i64;
        acc = acc.mul(&jp.t(k).pow_int(e).expect("positive exponent"));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::qcalc::QBase;
    use crate::triangle::build_triangle;

    fn ints(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&x| FieldElem::from_i64(x)).collect()
    }

    fn sample_sequences() -> Vec<MomentSeq> {
        vec![
            MomentSeq::Catalan,
            MomentSeq::CentralBinomial,
            MomentSeq::cseq(FieldElem::q_pow(4), FieldElem::q(), QBase::q_pow(2)),
            MomentSeq::cseq(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2)),
        ]
    }

    #[test]
    fn hankel_matrices() {
        let m = hankel_matrix(&MomentSeq::Catalan, 2, 0).unwrap();
        assert_eq!(m, SquareMatrix::from_i64_rows(&[&[1, 1], &[1, 2]]));
        let m = hankel_matrix(&MomentSeq::Catalan, 2, 2).unwrap();
        assert_eq!(m, SquareMatrix::from_i64_rows(&[&[2, 5], &[5, 14]]));
        let m = hankel_matrix(&MomentSeq::CentralBinomial, 3, 0).unwrap();
        assert_eq!(
            m,
            SquareMatrix::from_i64_rows(&[&[1, 2, 6], &[2, 6, 20], &[6, 20, 70]])
        );
    }

    #[test]
    fn ldlt_of_catalan_and_central_binomial() {
        let f = ldlt(&hankel_matrix(&MomentSeq::Catalan, 3, 0).unwrap()).unwrap();
        assert_eq!(
            f.a,
            SquareMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[2, 3, 1]])
        );
        assert_eq!(f.d, ints(&[1, 1, 1]));
        let f = ldlt(&hankel_matrix(&MomentSeq::CentralBinomial, 3, 0).unwrap()).unwrap();
        assert_eq!(f.d, ints(&[1, 2, 2]));
        let f = ldlt(&SquareMatrix::identity(4)).unwrap();
        assert_eq!(f.a, SquareMatrix::identity(4));
        assert_eq!(f.d, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn ldlt_reports_vanishing_minor() {
        let h = SquareMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 2], &[0, 2, 3]]);
        assert_eq!(ldlt(&h), Err(HankelError::SingularLeadingMinor(2)));
        // a zero last pivot needs no division
        let h = SquareMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(ldlt(&h).unwrap().d, ints(&[1, 0]));
    }

    #[test]
    fn factorisation_reconstructs_hankel() {
        for seq in sample_sequences() {
            for n in 1..=6 {
                let h = hankel_matrix(&seq, n, 0).unwrap();
                assert_eq!(ldlt(&h).unwrap().reconstruct(), h, "{seq} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_parameters_of_named_sequences() {
        let jp = jacobi_from_moments(&MomentSeq::Catalan, 5).unwrap();
        assert_eq!(jp.s, ints(&[1, 2, 2, 2]));
        assert_eq!(jp.t, ints(&[1, 1, 1, 1]));
        let jp = jacobi_from_moments(&MomentSeq::CentralBinomial, 5).unwrap();
        assert_eq!(jp.s, ints(&[2, 2, 2, 2]));
        assert_eq!(jp.t, ints(&[2, 1, 1, 1]));
        let jp = jacobi_from_moments(&MomentSeq::Catalan, 1).unwrap();
        assert!(jp.s.is_empty() && jp.t.is_empty());
    }

    #[test]
    fn jacobi_errors() {
        let e = MomentSeq::Explicit(ints(&[2, 1, 1]));
        assert!(matches!(
            jacobi_from_moments(&e, 2),
            Err(HankelError::NotNormalized(_))
        ));
        let e = MomentSeq::Explicit(ints(&[1, 1, 1, 1, 1]));
        assert_eq!(
            jacobi_from_moments(&e, 3),
            Err(HankelError::SingularLeadingMinor(2))
        );
        let e = MomentSeq::Explicit(ints(&[1, 1]));
        assert!(matches!(
            jacobi_from_moments(&e, 2),
            Err(HankelError::Sequence(SequenceError::OutOfRange { .. }))
        ));
    }

    #[test]
    fn lemma_matches_brute_force() {
        for seq in sample_sequences() {
            let jp = jacobi_from_moments(&seq, 6).unwrap();
            for n in 1..=6 {
                let h = hankel_matrix(&seq, n, 0).unwrap();
                assert_eq!(det_exact(&h), det_via_lemma(&jp, n), "{seq} n={n}");
            }
        }
    }

    #[test]
    fn lemma_product_values() {
        let ones = JacobiParams::new(vec![], ints(&[1; 7]));
        assert_eq!(det_via_lemma(&ones, 8), FieldElem::one());
        assert_eq!(det_via_lemma(&JacobiParams::default(), 1), FieldElem::one());
        let jp = JacobiParams::new(vec![], ints(&[2, 1]));
        assert_eq!(det_via_lemma(&jp, 3), FieldElem::from_i64(4));
    }

    #[test]
    fn moments_round_trip() {
        for seq in sample_sequences() {
            for d in 1..=8 {
                let jp = jacobi_from_moments(&seq, d).unwrap();
                let tri = build_triangle(&jp, d - 1);
                assert_eq!(tri.column0(), seq.terms_upto(d).unwrap(), "{seq} d={d}");
            }
        }
        let u = MomentSeq::useq(rat(4, 1), rat(1, 1), rat(2, 1));
        let jp = jacobi_from_moments(&u, 4).unwrap();
        assert_eq!(jp.s[0], FieldElem::from_rational(rat(1, 4)));
        assert_eq!(jp.t[0], FieldElem::from_rational(rat(1, 16)));
    }
}
