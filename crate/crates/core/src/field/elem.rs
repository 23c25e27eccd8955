use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::zpoly::ZPoly;
use super::{FieldError, Rational};

/// An element of the rational function field Q(q), always in canonical form.
///
/// Internally the value is `scale * num / den` where `num` and `den` are
/// coprime primitive integer polynomials with positive leading coefficients.
/// That is exactly the canonical form exposed through [`FieldElem::num`] and
/// [`FieldElem::den`]: the denominator has integer coefficients with content
/// one and a positive leading coefficient, and the numerator absorbs the
/// rational scale. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    scale: Rational,
    num: ZPoly,
    den: ZPoly,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            scale: Rational::zero(),
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        FieldElem::from_rational(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        FieldElem::q_pow(1)
    }

    /// `q^k`, with negative `k` allowed.
    pub fn q_pow(k: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            FieldElem::from_parts(Rational::one(), m, ZPoly::one())
        } else {
            FieldElem::from_parts(Rational::one(), ZPoly::one(), m)
        }
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElem::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            return FieldElem::zero();
        }
        FieldElem {
            scale: r,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        let (s, z) = p.to_scaled_zpoly();
        FieldElem::from_parts(s, z, ZPoly::one())
    }

    /// Builds `num / den` and reduces it.
    pub fn ratio(num: &Polynomial, den: &Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem::from_poly(num).div_unchecked(&FieldElem::from_poly(den)))
    }

    /// `1 - c q^k`, the basic q-Pochhammer factor.
    pub fn one_minus_monomial(c: &Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[0] = Rational::one();
        coeffs[k] -= c;
        FieldElem::from_poly(&Polynomial::new(coeffs))
    }

    /// Integer-polynomial constructor: `scale * num / den`, reduced.
    pub(crate) fn from_zpolys(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (cn, pn) = num.content_primitive();
        let (cd, pd) = den.content_primitive();
        let scale = scale * Rational::new(cn, cd);
        if scale.is_zero() {
            return FieldElem::zero();
        }
        let g = pn.gcd(&pd);
        if g.is_one() {
            FieldElem::from_parts(scale, pn, pd)
        } else {
            FieldElem::from_parts(scale, pn.div_exact(&g).unwrap(), pd.div_exact(&g).unwrap())
        }
    }

    /// Assembles already coprime primitive parts.
    fn from_parts(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return FieldElem::zero();
        }
        FieldElem { scale, num, den }
    }

    pub(crate) fn parts(&self) -> (&Rational, &ZPoly, &ZPoly) {
        (&self.scale, &self.num, &self.den)
    }

    pub fn num(&self) -> Polynomial {
        Polynomial::from_scaled_zpoly(&self.scale, &self.num)
    }

    pub fn den(&self) -> Polynomial {
        Polynomial::from_scaled_zpoly(&Rational::one(), &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// `Some(r)` when the element is the constant `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.num.is_one() && self.den.is_one()).then(|| self.scale.clone())
    }

    /// `Some((c, k))` when the element is the monomial `c q^k`, `k >= 0`.
    pub fn as_monomial(&self) -> Option<(Rational, usize)> {
        if self.is_zero() || !self.den.is_one() {
            return None;
        }
        let cs = self.num.coeffs();
        let k = cs.len() - 1;
        cs[..k]
            .iter()
            .all(|c| c.is_zero())
            .then(|| (&self.scale * Rational::from_integer(cs[k].clone()), k))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            scale: -&self.scale,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Henrici: share the denominator gcd, then only the numerator can
        // have a common factor with it.
        let g = if self.den == other.den {
            self.den.clone()
        } else {
            self.den.gcd(&other.den)
        };
        let e1 = self.den.div_exact(&g).unwrap();
        let e2 = other.den.div_exact(&g).unwrap();
        let d1 = self.scale.denom();
        let d2 = other.scale.denom();
        let k1 = self.scale.numer() * d2;
        let k2 = other.scale.numer() * d1;
        let n = self
            .num
            .mul(&e2)
            .scale(&k1)
            .add(&other.num.mul(&e1).scale(&k2));
        let base = Rational::new(BigInt::one(), d1 * d2);
        if n.is_zero() {
            return FieldElem::zero();
        }
        let (cn, pn) = n.content_primitive();
        let scale = base * Rational::from_integer(cn);
        let h = if g.is_one() { ZPoly::one() } else { pn.gcd(&g) };
        let (num, g) = if h.is_one() {
            (pn, g)
        } else {
            (pn.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        let den = g.mul(&e1).mul(&e2);
        FieldElem::from_parts(scale, num, den)
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() || other.is_zero() {
            return FieldElem::zero();
        }
        let scale = &self.scale * &other.scale;
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        FieldElem::from_parts(scale, n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem {
            scale: self.scale.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Division for callers that have already ruled out a zero divisor.
    pub(crate) fn div_unchecked(&self, other: &FieldElem) -> FieldElem {
        self.div(other).expect("division by zero")
    }

    pub fn pow_int(&self, e: i64) -> Result<FieldElem, FieldError> {
        if e == 0 {
            return Ok(FieldElem::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).expect("exponent too large");
        if base.is_zero() {
            return Ok(FieldElem::zero());
        }
        Ok(FieldElem {
            scale: num_traits::pow(base.scale.clone(), k as usize),
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Substitute `q -> q^k` for `k >= 1`.
    pub fn inflate(&self, k: usize) -> FieldElem {
        if self.is_zero() {
            return FieldElem::zero();
        }
        FieldElem {
            scale: self.scale.clone(),
            num: self.num.inflate(k),
            den: self.den.inflate(k),
        }
    }

    /// Exact value at `q = point`.
    pub fn specialize(&self, point: &Rational) -> Result<Rational, FieldError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(FieldError::PoleAtPoint(point.clone()));
        }
        Ok(&self.scale * self.num.eval(point) / d)
    }

    /// Re-runs canonicalisation from scratch; identity on canonical input.
    pub fn renormalized(&self) -> FieldElem {
        FieldElem::from_zpolys(self.scale.clone(), self.num.clone(), self.den.clone())
    }

    /// `1 / [n]`-style shortcuts and sums read better with this.
    pub fn sum<'a, I: IntoIterator<Item = &'a FieldElem>>(items: I) -> FieldElem {
        items
            .into_iter()
            .fold(FieldElem::zero(), |acc, x| acc.add(x))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FieldElem>>(items: I) -> FieldElem {
        items
            .into_iter()
            .fold(FieldElem::one(), |acc, x| acc.mul(x))
    }

    pub fn is_negative_constant(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}

fn cancel(n: &ZPoly, d: &ZPoly) -> (ZPoly, ZPoly) {
    if n.is_one() || d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_i64(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::from_rational(r)
    }
}

impl From<&Polynomial> for FieldElem {
    fn from(p: &Polynomial) -> Self {
        FieldElem::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                FieldElem::$method(self, rhs)
            }
        }
    };
}

// Only reference forms: owned impls would shadow the inherent `&self` methods.
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render(self))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", super::render::render(self))
    }
}
