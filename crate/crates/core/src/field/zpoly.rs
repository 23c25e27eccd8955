//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind [`FieldElem`](super::FieldElem): every
//! rational function is stored as a rational scale times a ratio of two
//! primitive integer polynomials, so all heavy lifting (products, exact
//! quotients, gcds) happens here on `BigInt` coefficients.
//!
//! The gcd is a dense modular algorithm: images modulo word-sized primes are
//! combined by CRT until the reconstruction stabilises, and the candidate is
//! accepted only after exact trial division over Z.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Polynomial with integer coefficients, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    #[cfg(test)]
    pub fn from_i64s(cs: &[i64]) -> Self {
        ZPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if let Some(p) = mul_small(&self.coeffs, &other.coeffs) {
            return p;
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        let mut acc = ZPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute `q -> q^k` (k >= 1).
    pub fn inflate(&self, k: usize) -> ZPoly {
        assert!(k >= 1, "inflate by zero exponent");
        if k == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        ZPoly { coeffs }
    }

    /// Gcd of the coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(content, primitive part)` where the primitive part has a
    /// positive leading coefficient and the content carries the sign.
    pub fn content_primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut g = self.content();
        if self.lc().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|c| c / &g).collect();
        (g, ZPoly { coeffs })
    }

    pub fn primitive_part(&self) -> ZPoly {
        self.content_primitive().1
    }

    /// Exact quotient `self / d` over Z, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.lc().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &qc * dc;
                }
            }
            quot[i] = qc;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quot))
    }

    /// Value at the rational point `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Homogenised Horner keeps everything integral until the last step.
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let (p, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &dpow;
            dpow *= d;
        }
        Rational::new(acc, num_traits::pow(d.clone(), deg))
    }

    /// Gcd over Z of two primitive polynomials, normalised primitive with
    /// positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (cf, f) = self.content_primitive();
        let (cg, g) = other.content_primitive();
        let c = cf.gcd(&cg);
        let h = gcd_primitive(&f, &g);
        if c.is_one() {
            h
        } else {
            h.scale(&c)
        }
    }
}

fn bits(c: &BigInt) -> u64 {
    c.bits()
}

/// i128 fast path when no intermediate can overflow.
fn mul_small(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let ba = a.iter().map(bits).max().unwrap_or(0);
    let bb = b.iter().map(bits).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let tb = 64 - terms.leading_zeros() as u64;
    if ba > 62 || bb > 62 || ba + bb + tb > 125 {
        return None;
    }
    let a64: Vec<i128> = a.iter().map(|c| c.to_i128().unwrap()).collect();
    let b64: Vec<i128> = b.iter().map(|c| c.to_i128().unwrap()).collect();
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a64.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b64.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Some(ZPoly::from_coeffs(
        out.into_iter().map(BigInt::from).collect(),
    ))
}

fn gcd_primitive(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f == g {
        return f.clone();
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    if df == 0 || dg == 0 {
        return ZPoly::one();
    }
    // Cheap exits for the very common case where one divides the other.
    let (small, large) = if df <= dg { (f, g) } else { (g, f) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    modular_gcd(f, g)
}

fn modular_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let lcf = f.lc().unwrap();
    let lcg = g.lc().unwrap();
    let gamma = lcf.gcd(lcg);

    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last: Option<ZPoly> = None;
    let mut primes = PrimeStream::new();

    loop {
        let p = primes.next_prime();
        let pb = BigInt::from(p);
        if (lcf % &pb).is_zero() || (lcg % &pb).is_zero() {
            continue;
        }
        let fp = reduce_mod(f, p);
        let gp = reduce_mod(g, p);
        let mut hp = gcd_mod(fp, gp, p);
        if hp.len() == 1 {
            return ZPoly::one();
        }
        let gm = bigint_mod(&gamma, p);
        for c in hp.iter_mut() {
            *c = mulmod(*c, gm, p);
        }

        acc = match acc.take() {
            None => Some((hp.iter().map(|&c| BigInt::from(c)).collect(), pb)),
            Some((h, m)) => match hp.len().cmp(&h.len()) {
                Ordering::Less => {
                    last = None;
                    Some((hp.iter().map(|&c| BigInt::from(c)).collect(), pb))
                }
                Ordering::Greater => Some((h, m)),
                Ordering::Equal => Some(crt_combine(h, &m, &hp, p)),
            },
        };

        let (h, m) = acc.as_ref().unwrap();
        let half: BigInt = m >> 1;
        let sym: Vec<BigInt> = h
            .iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect();
        let cand = ZPoly::from_coeffs(sym).primitive_part();
        if last.as_ref() == Some(&cand)
            && f.div_exact(&cand).is_some()
            && g.div_exact(&cand).is_some()
        {
            return cand;
        }
        last = Some(cand);
    }
}

fn crt_combine(h: Vec<BigInt>, m: &BigInt, hp: &[u64], p: u64) -> (Vec<BigInt>, BigInt) {
    let m_mod_p = bigint_mod(m, p);
    let inv = invmod(m_mod_p, p);
    let out = h
        .into_iter()
        .zip(hp)
        .map(|(c, &r)| {
            let cp = bigint_mod(&c, p);
            let delta = mulmod(submod(r, cp, p), inv, p);
            c + m * BigInt::from(delta)
        })
        .collect();
    (out, m * BigInt::from(p))
}

struct PrimeStream {
    cur: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { cur: 1 << 62 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            self.cur -= 1;
            if is_prime_u64(self.cur) {
                return self.cur;
            }
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    match r.sign() {
        Sign::NoSign => 0,
        _ => r.to_u64().unwrap(),
    }
}

fn reduce_mod(f: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.coeffs.iter().map(|c| bigint_mod(c, p)).collect();
    trim_mod(&mut v);
    v
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over GF(p).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    let inv = invmod(*a.last().unwrap(), p);
    for c in a.iter_mut() {
        *c = mulmod(*c, inv, p);
    }
    a
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let coef = mulmod(a[da], inv, p);
        if coef != 0 {
            let shift = da - db;
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = submod(a[shift + j], mulmod(coef, bc, p), p);
            }
        }
        a.pop();
        trim_mod(&mut a);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q^6) and (1-q^4) share (1-q^2)
        let a = zp(&[1, 0, 0, 0, 0, 0, -1]);
        let b = zp(&[1, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), zp(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_with_nontrivial_leading_coefficients() {
        let g = zp(&[3, -2, 5]);
        let a = g.mul(&zp(&[7, 1, 2]));
        let b = g.mul(&zp(&[-1, 4]));
        assert_eq!(a.gcd(&b), g);
        assert_eq!(a.gcd(&zp(&[2, 9])), ZPoly::one());
    }

    #[test]
    fn gcd_against_euclid_on_large_powers() {
        let base = zp(&[1, 1]).pow(30).mul(&zp(&[2, 0, 1]).pow(7));
        let a = base.mul(&zp(&[5, 3]).pow(4));
        let b = base.mul(&zp(&[1, -7, 1]).pow(3));
        assert_eq!(a.gcd(&b), base);
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = zp(&[1, 2, 1]);
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[1, 1])));
        assert_eq!(a.div_exact(&zp(&[1, 2])), None);
        assert_eq!(zp(&[2, 4]).div_exact(&zp(&[4])), None);
    }

    #[test]
    fn eval_homogenised() {
        let p = zp(&[1, -3, 2]);
        let x = Rational::new(1.into(), 2.into());
        assert_eq!(p.eval(&x), Rational::zero());
        assert_eq!(
            p.eval(&Rational::from_integer(3.into())),
            Rational::from_integer(10.into())
        );
    }

    #[test]
    fn small_and_big_products_agree() {
        let a = zp(&[i64::MAX, -5, 3]);
        let b = zp(&[i64::MAX, 7]);
        let big = a.mul(&b);
        assert_eq!(
            big.coeffs()[0],
            BigInt::from(i64::MAX) * BigInt::from(i64::MAX)
        );
        assert_eq!(zp(&[1, 1]).mul(&zp(&[-1, 1])), zp(&[-1, 0, 1]));
    }
}
