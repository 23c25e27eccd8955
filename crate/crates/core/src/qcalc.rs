//! q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.
//!
//! Everything returns exact [`FieldElem`]s. The base-`q` primitives are
//! memoised per thread, since triangle and determinant builders ask for the
//! same small arguments over and over.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::field::zpoly::ZPoly;
use crate::field::{FieldElem, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QCalcError {
    #[error("q-binomial with negative upper index {0} is not supported")]
    UnsupportedNegativeUpper(i64),
}

/// The base of a q-symbol: `q` itself, or `q^2` and friends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QBase(FieldElem);

impl QBase {
    pub fn new(base: FieldElem) -> Self {
        QBase(base)
    }

    pub fn q() -> Self {
        QBase(FieldElem::q())
    }

    pub fn q_pow(e: usize) -> Self {
        QBase(FieldElem::q_pow(e as i64))
    }

    pub fn value(&self) -> &FieldElem {
        &self.0
    }

    /// `base^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FieldElem {
        self.0
            .pow_int(k)
            .expect("q-base must be nonzero for negative powers")
    }

    /// `Some(e)` when the base is exactly `q^e`.
    pub fn exponent(&self) -> Option<usize> {
        match self.0.as_monomial() {
            Some((c, e)) if c.is_one() && e >= 1 => Some(e),
            _ => None,
        }
    }
}

impl Default for QBase {
    fn default() -> Self {
        QBase::q()
    }
}

thread_local! {
    static Q_INT: RefCell<HashMap<usize, FieldElem>> = RefCell::new(HashMap::new());
    static Q_FACT: RefCell<HashMap<usize, FieldElem>> = RefCell::new(HashMap::new());
    static Q_BINOM: RefCell<HashMap<(usize, usize), FieldElem>> = RefCell::new(HashMap::new());
}

fn memo<K, F>(
    cache: &'static std::thread::LocalKey<RefCell<HashMap<K, FieldElem>>>,
    key: K,
    f: F,
) -> FieldElem
where
    K: std::hash::Hash + Eq + Copy,
    F: FnOnce() -> FieldElem,
{
    if let Some(v) = cache.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = f();
    cache.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// `[n] = 1 + q + ... + q^(n-1)`; `[0] = 0`.
pub fn q_int(n: usize) -> FieldElem {
    memo(&Q_INT, n, || {
        FieldElem::from_poly(&Polynomial::new(vec![Rational::one(); n]))
    })
}

/// `[n]_Q = (1 - Q^n) / (1 - Q)` in an arbitrary base.
pub fn q_int_in(n: usize, base: &QBase) -> FieldElem {
    match base.exponent() {
        Some(e) => q_int(n).inflate(e),
        None => (0..n).fold(FieldElem::zero(), |acc, j| acc.add(&base.pow(j as i64))),
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: usize) -> FieldElem {
    memo(&Q_FACT, n, || {
        if n == 0 {
            FieldElem::one()
        } else {
            q_factorial(n - 1).mul(&q_int(n))
        }
    })
}

/// Gaussian binomial in base `q`; zero outside `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> Result<FieldElem, QCalcError> {
    if n < 0 {
        return Err(QCalcError::UnsupportedNegativeUpper(n));
    }
    if k < 0 || k > n {
        return Ok(FieldElem::zero());
    }
    let (n, k) = (n as usize, k.min(n - k) as usize);
    Ok(memo(&Q_BINOM, (n, k), || {
        // prod_{i=1}^{k} (1 - q^(n-k+i)) / (1 - q^i), divided exactly over Z
        let mut num = ZPoly::one();
        let mut den = ZPoly::one();
        for i in 1..=k {
            num = num.mul(&one_minus_q_pow(n - k + i));
            den = den.mul(&one_minus_q_pow(i));
        }
        let quot = num.div_exact(&den).expect("q-binomial is a polynomial");
        FieldElem::from_zpolys(Rational::one(), quot, ZPoly::one())
    }))
}

/// Gaussian binomial in an arbitrary base `Q`.
pub fn q_binomial_in(n: i64, k: i64, base: &QBase) -> Result<FieldElem, QCalcError> {
    if let Some(e) = base.exponent() {
        return Ok(q_binomial(n, k)?.inflate(e));
    }
    if n < 0 {
        return Err(QCalcError::UnsupportedNegativeUpper(n));
    }
    if k < 0 || k > n {
        return Ok(FieldElem::zero());
    }
    let (n, k) = (n as usize, k as usize);
    let b = base.value();
    let num = q_pochhammer(b, base, n);
    let den = q_pochhammer(b, base, k).mul(&q_pochhammer(b, base, n - k));
    Ok(num.div(&den).expect("q-base must not be a root of unity"))
}

fn one_minus_q_pow(k: usize) -> ZPoly {
    let mut cs = vec![BigInt::from(0); k + 1];
    cs[0] = BigInt::one();
    cs[k] -= 1;
    ZPoly::from_coeffs(cs)
}

/// `(x; Q)_n = prod_{j=0}^{n-1} (1 - Q^j x)`.
pub fn q_pochhammer(x: &FieldElem, base: &QBase, n: usize) -> FieldElem {
    let mut acc = FieldElem::one();
    let mut shifted = x.clone();
    for j in 0..n {
        if j > 0 {
            shifted = shifted.mul(base.value());
        }
        acc = acc.mul(&FieldElem::one().sub(&shifted));
    }
    acc
}

/// `<x>_n = prod_{j=0}^{n-1} (x - [j])` for a rational constant `x`.
pub fn bracket_falling(x: &Rational, n: usize) -> FieldElem {
    let xf = FieldElem::from_rational(x.clone());
    (0..n).fold(FieldElem::one(), |acc, j| acc.mul(&xf.sub(&q_int(j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn poly(cs: &[i64]) -> FieldElem {
        FieldElem::from_poly(&Polynomial::from_i64s(cs))
    }

    /// Independent oracle: q-Pascal `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
    fn pascal(n: usize, k: usize) -> FieldElem {
        let mut rows = vec![vec![FieldElem::one()]];
        for m in 1..=n {
            let prev = &rows[m - 1];
            let row = (0..=m)
                .map(|j| {
                    let left = if j >= 1 {
                        prev[j - 1].clone()
                    } else {
                        FieldElem::zero()
                    };
                    let up = prev.get(j).cloned().unwrap_or_else(FieldElem::zero);
                    left.add(&FieldElem::q_pow(j as i64).mul(&up))
                })
                .collect();
            rows.push(row);
        }
        rows[n][k].clone()
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0), FieldElem::zero());
        assert_eq!(q_int(1), FieldElem::one());
        assert_eq!(q_int(3), poly(&[1, 1, 1]));
    }

    #[test]
    fn q_factorial_values() {
        assert_eq!(q_factorial(0), FieldElem::one());
        assert_eq!(q_factorial(2), poly(&[1, 1]));
        assert_eq!(q_factorial(3), poly(&[1, 1]).mul(&poly(&[1, 1, 1])));
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(2, 1).unwrap(), poly(&[1, 1]));
        assert_eq!(q_binomial(5, 7).unwrap(), FieldElem::zero());
        assert_eq!(q_binomial(4, 2).unwrap(), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), pascal(4, 2));
        assert_eq!(
            q_binomial(-1, 0),
            Err(QCalcError::UnsupportedNegativeUpper(-1))
        );
    }

    #[test]
    fn both_pascal_rules_hold() {
        for n in 1..=12i64 {
            for k in 0..=n {
                let lhs = q_binomial(n, k).unwrap();
                let a = q_binomial(n - 1, k - 1)
                    .unwrap()
                    .add(&FieldElem::q_pow(k).mul(&q_binomial(n - 1, k).unwrap()));
                let b = FieldElem::q_pow(n - k)
                    .mul(&q_binomial(n - 1, k - 1).unwrap())
                    .add(&q_binomial(n - 1, k).unwrap());
                assert_eq!(lhs, a, "first rule n={n} k={k}");
                assert_eq!(lhs, b, "second rule n={n} k={k}");
            }
        }
    }

    #[test]
    fn classical_limits() {
        let one = rat(1, 1);
        for n in 0..=10usize {
            assert_eq!(q_int(n).specialize(&one).unwrap(), rat(n as i64, 1));
            let mut binom = 1i64;
            for k in 0..=n {
                let got = q_binomial(n as i64, k as i64)
                    .unwrap()
                    .specialize(&one)
                    .unwrap();
                assert_eq!(got, rat(binom, 1), "n={n} k={k}");
                binom = binom * (n - k) as i64 / (k as i64 + 1);
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        let b = poly(&[2, 3]);
        assert_eq!(q_pochhammer(&b, &QBase::q(), 1), FieldElem::one().sub(&b));
        assert_eq!(q_pochhammer(&b, &QBase::q(), 0), FieldElem::one());
        let want = poly(&[1, -1]).mul(&poly(&[1, 0, 0, -1]));
        assert_eq!(q_pochhammer(&FieldElem::q(), &QBase::q_pow(2), 2), want);
    }

    #[test]
    fn pochhammer_splits() {
        let base = QBase::q_pow(2);
        let x = poly(&[1, 0, 3]).div(&poly(&[2, 1])).unwrap();
        for m in 0..=8usize {
            for n in 0..=8usize {
                let whole = q_pochhammer(&x, &base, m + n);
                let shifted = base.pow(m as i64).mul(&x);
                let split = q_pochhammer(&x, &base, m).mul(&q_pochhammer(&shifted, &base, n));
                assert_eq!(whole, split);
            }
        }
    }

    #[test]
    fn bracket_values() {
        let x = rat(7, 3);
        assert_eq!(bracket_falling(&x, 0), FieldElem::one());
        let xf = FieldElem::from_rational(x.clone());
        assert_eq!(bracket_falling(&x, 2), xf.mul(&xf.sub(&FieldElem::one())));
        // 2 * 1 * (1 - q)
        assert_eq!(bracket_falling(&rat(2, 1), 3), poly(&[2, -2]));
    }

    #[test]
    fn bracket_matches_pochhammer_form() {
        // <x>_n = (1+(q-1)x)^n / (q-1)^n * (1/(1+(q-1)x); q)_n
        let qm1 = poly(&[-1, 1]);
        for x in [rat(2, 1), rat(3, 1), rat(5, 2), rat(-1, 3)] {
            let u = FieldElem::one().add(&qm1.mul(&FieldElem::from_rational(x.clone())));
            let inv = FieldElem::one().div(&u).unwrap();
            for n in 0..=6usize {
                let rhs = u
                    .pow_int(n as i64)
                    .unwrap()
                    .div(&qm1.pow_int(n as i64).unwrap())
                    .unwrap()
                    .mul(&q_pochhammer(&inv, &QBase::q(), n));
                assert_eq!(bracket_falling(&x, n), rhs, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn binomial_in_other_base() {
        let base = QBase::q_pow(2);
        let direct = q_binomial_in(4, 2, &base).unwrap();
        assert_eq!(direct, q_binomial(4, 2).unwrap().inflate(2));
        let generic = QBase::new(poly(&[0, 0, 2]));
        let got = q_binomial_in(3, 1, &generic).unwrap();
        assert_eq!(got, poly(&[1, 0, 2, 0, 4]));
        assert_eq!(q_int_in(3, &generic), poly(&[1, 0, 2, 0, 4]));
    }
}
