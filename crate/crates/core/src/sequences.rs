//! Moment sequences: the q-Pochhammer ratio `c(n,a,b,Q) = (b;Q)_n / (a;Q)_n`,
//! its classical limit `u(n,a,b,c)`, and the named specialisations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{FieldElem, Rational};
use crate::qcalc::QBase;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("pole in sequence at term {0}")]
    PoleInSequence(usize),
    #[error("explicit sequence has {available} terms, term {requested} requested")]
    OutOfRange { requested: usize, available: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentSeq {
    /// `(b;Q)_n / (a;Q)_n`.
    CSeq {
        a: FieldElem,
        b: FieldElem,
        base: QBase,
    },
    /// `prod (b + jc) / prod (a + jc)`, `j < n`.
    USeq {
        a: Rational,
        b: Rational,
        c: Rational,
    },
    Catalan,
    CentralBinomial,
    /// Andrews' q-Catalan numbers, `c(n, q^4, q, q^2)`.
    AndrewsQCatalan,
    Shifted(Box<MomentSeq>, usize),
    /// `x^n` times the inner term.
    Scaled(Box<MomentSeq>, FieldElem),
    Explicit(Vec<FieldElem>),
}

impl MomentSeq {
    pub fn cseq(a: FieldElem, b: FieldElem, base: QBase) -> Self {
        MomentSeq::CSeq { a, b, base }
    }

    pub fn useq(a: Rational, b: Rational, c: Rational) -> Self {
        MomentSeq::USeq { a, b, c }
    }

    pub fn shifted(self, m: usize) -> Self {
        if m == 0 {
            self
        } else {
            MomentSeq::Shifted(Box::new(self), m)
        }
    }

    pub fn scaled(self, x: FieldElem) -> Self {
        MomentSeq::Scaled(Box::new(self), x)
    }

    /// The n-th moment.
    pub fn term(&self, n: usize) -> Result<FieldElem, SequenceError> {
        match self {
            MomentSeq::CSeq { .. } | MomentSeq::USeq { .. } | MomentSeq::AndrewsQCatalan => {
                Ok(self.terms_upto(n + 1)?.pop().unwrap())
            }
            MomentSeq::Catalan => Ok(FieldElem::from_rational(Rational::from_integer(catalan(n)))),
            MomentSeq::CentralBinomial => Ok(FieldElem::from_rational(Rational::from_integer(
                binomial(2 * n as u64, n as u64),
            ))),
            MomentSeq::Shifted(inner, m) => inner.term(n + m).map_err(|e| shift_error(e, *m)),
            MomentSeq::Scaled(inner, x) => {
                let v = inner.term(n)?;
                Ok(x.pow_int(n as i64).unwrap().mul(&v))
            }
            MomentSeq::Explicit(values) => {
                values.get(n).cloned().ok_or(SequenceError::OutOfRange {
                    requested: n,
                    available: values.len(),
                })
            }
        }
    }

    /// The first `count` moments, built one factor at a time for the
    /// product families.
    pub fn terms_upto(&self, count: usize) -> Result<Vec<FieldElem>, SequenceError> {
        match self {
            MomentSeq::CSeq { a, b, base } => cseq_terms(a, b, base, count),
            MomentSeq::AndrewsQCatalan => cseq_terms(
                &FieldElem::q_pow(4),
                &FieldElem::q(),
                &QBase::q_pow(2),
                count,
            ),
            MomentSeq::USeq { a, b, c } => {
                let mut out = Vec::with_capacity(count);
                let mut cur = Rational::one();
                for n in 0..count {
                    if n > 0 {
                        let j = Rational::from_integer(BigInt::from(n - 1));
                        let den = a + &j * c;
                        if den.is_zero() {
                            return Err(SequenceError::PoleInSequence(n));
                        }
                        cur = cur * (b + &j * c) / den;
                    }
                    out.push(FieldElem::from_rational(cur.clone()));
                }
                Ok(out)
            }
            _ => (0..count).map(|n| self.term(n)).collect(),
        }
    }
}

fn shift_error(e: SequenceError, m: usize) -> SequenceError {
    match e {
        SequenceError::PoleInSequence(n) => SequenceError::PoleInSequence(n - m),
        other => other,
    }
}

fn cseq_terms(
    a: &FieldElem,
    b: &FieldElem,
    base: &QBase,
    count: usize,
) -> Result<Vec<FieldElem>, SequenceError> {
    let mut out = Vec::with_capacity(count);
    let mut cur = FieldElem::one();
    let mut qa = a.clone();
    let mut qb = b.clone();
    for n in 0..count {
        if n > 0 {
            let den = FieldElem::one().sub(&qa);
            if den.is_zero() {
                return Err(SequenceError::PoleInSequence(n));
            }
            cur = cur.mul(&FieldElem::one().sub(&qb)).div(&den).unwrap();
            qa = qa.mul(base.value());
            qb = qb.mul(base.value());
        }
        out.push(cur.clone());
    }
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as u64, n as u64) / BigInt::from(n + 1)
}

impl fmt::Display for MomentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentSeq::CSeq { a, b, base } => write!(f, "c:{a},{b},{}", base.value()),
            MomentSeq::USeq { a, b, c } => write!(f, "u:{a},{b},{c}"),
            MomentSeq::Catalan => f.write_str("catalan"),
            MomentSeq::CentralBinomial => f.write_str("central-binomial"),
            MomentSeq::AndrewsQCatalan => f.write_str("andrews"),
            MomentSeq::Shifted(inner, m) => write!(f, "shift:{m}:{inner}"),
            MomentSeq::Scaled(inner, x) => write!(f, "scale:{x}:{inner}"),
            MomentSeq::Explicit(vs) => {
                f.write_str("explicit:")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Polynomial};

    fn ints(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&x| FieldElem::from_i64(x)).collect()
    }

    #[test]
    fn catalan_terms() {
        assert_eq!(
            MomentSeq::Catalan.terms_upto(8).unwrap(),
            ints(&[1, 1, 2, 5, 14, 42, 132, 429])
        );
        assert_eq!(MomentSeq::Catalan.terms_upto(1).unwrap(), ints(&[1]));
    }

    #[test]
    fn useq_second_term() {
        let u = MomentSeq::useq(rat(4, 1), rat(1, 1), rat(2, 1));
        assert_eq!(u.term(2).unwrap(), FieldElem::from_rational(rat(1, 8)));
    }

    #[test]
    fn cseq_first_term() {
        let c = MomentSeq::cseq(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2));
        let want = FieldElem::one()
            .div(&FieldElem::from_poly(&Polynomial::from_i64s(&[1, 1])))
            .unwrap();
        assert_eq!(c.term(1).unwrap(), want);
        assert_eq!(c.term(0).unwrap(), FieldElem::one());
    }

    #[test]
    fn central_binomial_and_shift() {
        assert_eq!(
            MomentSeq::CentralBinomial.terms_upto(4).unwrap(),
            ints(&[1, 2, 6, 20])
        );
        assert_eq!(
            MomentSeq::Catalan.shifted(2).terms_upto(3).unwrap(),
            ints(&[2, 5, 14])
        );
    }

    #[test]
    fn scaling_multiplies_by_powers() {
        let s = MomentSeq::Catalan.scaled(FieldElem::from_i64(4));
        for n in 0..=10usize {
            let want = FieldElem::from_i64(4)
                .pow_int(n as i64)
                .unwrap()
                .mul(&MomentSeq::Catalan.term(n).unwrap());
            assert_eq!(s.term(n).unwrap(), want);
        }
    }

    #[test]
    fn poles_are_reported() {
        let c = MomentSeq::cseq(FieldElem::one(), FieldElem::q(), QBase::q());
        assert_eq!(c.term(0).unwrap(), FieldElem::one());
        assert_eq!(c.term(1), Err(SequenceError::PoleInSequence(1)));
        let u = MomentSeq::useq(rat(-2, 1), rat(1, 1), rat(1, 1));
        assert_eq!(u.term(3), Err(SequenceError::PoleInSequence(3)));
        let e = MomentSeq::Explicit(ints(&[1, 2]));
        assert!(matches!(e.term(2), Err(SequenceError::OutOfRange { .. })));
    }

    #[test]
    fn q_form_tends_to_classical_ratio() {
        let andrews = MomentSeq::AndrewsQCatalan.terms_upto(11).unwrap();
        let classical = MomentSeq::useq(rat(4, 1), rat(1, 1), rat(2, 1))
            .terms_upto(11)
            .unwrap();
        for (x, u) in andrews.iter().zip(&classical) {
            assert_eq!(x.specialize(&rat(1, 1)).unwrap(), u.as_rational().unwrap());
        }
    }

    #[test]
    fn central_binomial_is_scaled_q_limit() {
        let c = MomentSeq::cseq(FieldElem::q_pow(2), FieldElem::q(), QBase::q_pow(2));
        for (n, x) in c.terms_upto(9).unwrap().iter().enumerate() {
            let lim = x.specialize(&rat(1, 1)).unwrap();
            let four_n = Rational::from_integer(BigInt::from(4).pow(n as u32));
            assert_eq!(
                four_n * lim,
                Rational::from_integer(binomial(2 * n as u64, n as u64))
            );
        }
    }
}
