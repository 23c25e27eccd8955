use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zpoly::ZPoly;
use super::Rational;

/// Univariate polynomial in `q` with rational coefficients, ascending powers.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Polynomial::new(
            cs.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Writes `self = scale * z` with `z` primitive over Z and positive
    /// leading coefficient.
    pub(crate) fn to_scaled_zpoly(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let (content, prim) = ZPoly::from_coeffs(ints).content_primitive();
        (Rational::new(content, lcm), prim)
    }

    pub(crate) fn from_scaled_zpoly(scale: &Rational, z: &ZPoly) -> Self {
        Polynomial::new(
            z.coeffs()
                .iter()
                .map(|c| scale * Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Division with remainder over Q.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if sd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let lc = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (sa, za) = self.to_scaled_zpoly();
        let (sb, zb) = rhs.to_scaled_zpoly();
        Polynomial::from_scaled_zpoly(&(sa * sb), &za.mul(&zb))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_poly(self))
    }
}
