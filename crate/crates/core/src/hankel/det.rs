use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SquareMatrix;
use crate::field::zpoly::ZPoly;
use crate::field::{FieldElem, Rational};

/// Determinant engine selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Gaussian elimination with field division.
    Gauss,
    /// Fraction-free elimination on cleared polynomial rows.
    #[default]
    Bareiss,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Gauss => "gauss",
            Engine::Bareiss => "bareiss",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gauss" => Ok(Engine::Gauss),
            "bareiss" => Ok(Engine::Bareiss),
            other => Err(format!(
                "unknown engine '{other}' (expected gauss or bareiss)"
            )),
        }
    }
}

/// Exact determinant with the default engine.
pub fn det_exact(m: &SquareMatrix) -> FieldElem {
    det_with(m, Engine::default())
}

pub fn det_with(m: &SquareMatrix, engine: Engine) -> FieldElem {
    match engine {
        Engine::Gauss => det_gauss(m),
        Engine::Bareiss => det_bareiss(m),
    }
}

fn det_gauss(m: &SquareMatrix) -> FieldElem {
    let n = m.dim();
    let mut rows: Vec<Vec<FieldElem>> = m.rows().map(|r| r.to_vec()).collect();
    let mut det = FieldElem::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return FieldElem::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = det.neg();
        }
        let (top, rest) = rows.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let pivot_inv = pivot_row[c].inv().expect("pivot is nonzero");
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].mul(&pivot_inv);
            for j in c + 1..n {
                row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
            }
            row[c] = FieldElem::zero();
        }
        det = det.mul(&pivot_row[c]);
    }
    det
}

/// Multiplies a row by `R * L` (`R` the lcm of the rational denominators,
/// `L` the lcm of the polynomial denominators) so every entry lands in Z[q].
/// Returns the integer row together with `R` and `L`.
fn clear_row(row: &[FieldElem]) -> (Vec<ZPoly>, BigInt, ZPoly) {
    let mut r = BigInt::one();
    let mut l = ZPoly::one();
    for x in row {
        let (scale, _, den) = x.parts();
        if scale.is_zero() {
            continue;
        }
        r = r.lcm(scale.denom());
        if !den.is_one() {
            let g = l.gcd(den);
            l = l.mul(&den.div_exact(&g).expect("gcd divides"));
        }
    }
    let cleared = row
        .iter()
        .map(|x| {
            let (scale, num, den) = x.parts();
            if scale.is_zero() {
                return ZPoly::zero();
            }
            let k = scale.numer() * (&r / scale.denom());
            num.mul(&l.div_exact(den).expect("lcm is a multiple"))
                .scale(&k)
        })
        .collect();
    (cleared, r, l)
}

fn det_bareiss(m: &SquareMatrix) -> FieldElem {
    let n = m.dim();
    if n == 0 {
        return FieldElem::one();
    }
    let mut rows = Vec::with_capacity(n);
    let mut r_total = BigInt::one();
    let mut l_total = ZPoly::one();
    for row in m.rows() {
        let (z, r, l) = clear_row(row);
        r_total *= r;
        l_total = l_total.mul(&l);
        rows.push(z);
    }
    let mut negate = false;
    let mut prev = ZPoly::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return FieldElem::zero();
        };
        if p != c {
            rows.swap(p, c);
            negate = !negate;
        }
        let (top, rest) = rows.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest.iter_mut() {
            for j in c + 1..n {
                let v = row[j].mul(&pivot_row[c]).sub(&row[c].mul(&pivot_row[j]));
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            row[c] = ZPoly::zero();
        }
        prev = pivot_row[c].clone();
    }
    let mut det = rows[n - 1][n - 1].clone();
    if negate {
        det = det.neg();
    }
    FieldElem::from_zpolys(Rational::new(BigInt::one(), r_total), det, l_total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field_expr, rat};

    fn both(m: &SquareMatrix) -> FieldElem {
        let a = det_with(m, Engine::Gauss);
        let b = det_with(m, Engine::Bareiss);
        assert_eq!(a, b, "engines disagree on\n{m}");
        a
    }

    #[test]
    fn small_integer_determinants() {
        assert_eq!(
            both(&SquareMatrix::from_i64_rows(&[&[1, 1], &[1, 2]])),
            FieldElem::one()
        );
        assert_eq!(
            both(&SquareMatrix::from_i64_rows(&[&[2, 5], &[5, 14]])),
            FieldElem::from_i64(3)
        );
        assert_eq!(both(&SquareMatrix::identity(5)), FieldElem::one());
        assert_eq!(both(&SquareMatrix::identity(0)), FieldElem::one());
    }

    #[test]
    fn row_swaps_track_sign() {
        let m = SquareMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(both(&m), FieldElem::from_i64(-1));
        let m = SquareMatrix::from_i64_rows(&[&[0, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        // cofactor expansion: 0 - 2(40-42) + 3(32-35)
        assert_eq!(both(&m), FieldElem::from_i64(-5));
    }

    #[test]
    fn singular_matrices_give_zero() {
        let m = SquareMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert!(both(&m).is_zero());
        let m = SquareMatrix::from_i64_rows(&[&[0, 0], &[0, 1]]);
        assert!(both(&m).is_zero());
    }

    #[test]
    fn rational_function_entries() {
        let e = |s: &str| parse_field_expr(s).unwrap();
        let m = SquareMatrix::from_rows(vec![
            vec![e("1/(1-q)"), e("q")],
            vec![e("1/2"), e("(1+q)/(1-q^2)")],
        ]);
        // 1/(1-q)^2 - q/2
        let want = e("1/(1-q)^2 - q/2");
        assert_eq!(both(&m), want);
        let half = FieldElem::from_rational(rat(1, 2));
        let m = SquareMatrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half, e("q")]]);
        assert_eq!(both(&m), e("q/2 - 1/4"));
    }
}
