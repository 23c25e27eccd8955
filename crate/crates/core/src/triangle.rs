//! Recurrence triangles.
//!
//! Given Jacobi parameters `s(k)`, `t(k)` the triangle `a(n, k)` is
//!
//! ```text
//! a(0, k) = [k = 0]
//! a(n, k) = a(n-1, k-1) + s(k) a(n-1, k) + t(k) a(n-1, k+1)
//! ```
//!
//! with `a(n, k) = 0` outside `0 <= k <= n`. Column 0 holds the moments.
//! With all `s(k) = 0` the recurrence decouples by parity; that zero-s form
//! is driven by a single sequence `T(k)` and contracts back to `(s, t)`.

use crate::field::FieldElem;

/// Tabulated three-term recurrence coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JacobiParams {
    pub s: Vec<FieldElem>,
    pub t: Vec<FieldElem>,
}

impl JacobiParams {
    pub fn new(s: Vec<FieldElem>, t: Vec<FieldElem>) -> Self {
        JacobiParams { s, t }
    }

    /// Tabulates closed-form callbacks on `0..len`.
    pub fn from_fn(
        len: usize,
        s: impl Fn(usize) -> FieldElem,
        t: impl Fn(usize) -> FieldElem,
    ) -> Self {
        JacobiParams {
            s: (0..len).map(s).collect(),
            t: (0..len).map(t).collect(),
        }
    }

    /// Rows of the triangle these parameters can drive.
    pub fn max_rows(&self) -> usize {
        // row n reads s(..n-1) and t(..n-2)
        (self.s.len() + 1).min(self.t.len() + 2)
    }

    pub fn s(&self, k: usize) -> &FieldElem {
        &self.s[k]
    }

    pub fn t(&self, k: usize) -> &FieldElem {
        &self.t[k]
    }
}

/// The zero-s driving sequence `T(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TSeq(pub Vec<FieldElem>);

impl TSeq {
    pub fn from_fn(len: usize, f: impl Fn(usize) -> FieldElem) -> Self {
        TSeq((0..len).map(f).collect())
    }

    pub fn constant(len: usize, v: FieldElem) -> Self {
        TSeq(vec![v; len])
    }

    pub fn get(&self, k: usize) -> &FieldElem {
        &self.0[k]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lower-triangular table; `rows[n]` holds `a(n, 0..=n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<FieldElem>>,
}

impl Triangle {
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        Triangle { rows }
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[FieldElem] {
        &self.rows[n]
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// `a(n, k)`, zero outside the triangle.
    pub fn get(&self, n: usize, k: i64) -> FieldElem {
        if k < 0 {
            return FieldElem::zero();
        }
        self.rows
            .get(n)
            .and_then(|r| r.get(k as usize))
            .cloned()
            .unwrap_or_else(FieldElem::zero)
    }

    /// Column 0, i.e. the moments `a(n, 0)`.
    pub fn column0(&self) -> Vec<FieldElem> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }
}

/// Builds rows `0..=n_max` from `(s, t)`.
///
/// # Panics
/// If `jp` does not cover `s(0..n_max)` and `t(0..n_max-1)`.
pub fn build_triangle(jp: &JacobiParams, n_max: usize) -> Triangle {
    assert!(
        jp.max_rows() > n_max,
        "Jacobi parameters cover {} rows, {} requested",
        jp.max_rows(),
        n_max + 1
    );
    let mut rows: Vec<Vec<FieldElem>> = vec![vec![FieldElem::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let mut v = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    FieldElem::zero()
                };
                if k < n {
                    v = v.add(&jp.s(k).mul(&prev[k]));
                }
                if k + 1 < n {
                    v = v.add(&jp.t(k).mul(&prev[k + 1]));
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle { rows }
}

/// Builds rows `0..=n_max` of the zero-s triangle `A(n, k)` from `T`.
///
/// # Panics
/// If `T` does not cover `0..n_max-1`.
pub fn build_zero_s_triangle(t: &TSeq, n_max: usize) -> Triangle {
    assert!(
        t.len() + 1 >= n_max,
        "T covers {} values, {} rows requested",
        t.len(),
        n_max + 1
    );
    let mut rows: Vec<Vec<FieldElem>> = vec![vec![FieldElem::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                // A(n-1, j) vanishes unless j has the parity of n-1
                if (n + k) % 2 == 1 {
                    return FieldElem::zero();
                }
                let mut v = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    FieldElem::zero()
                };
                if k + 1 < n {
                    v = v.add(&t.get(k).mul(&prev[k + 1]));
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle { rows }
}

/// Contracts a zero-s sequence to `(s, t)`:
/// `s(0) = T(0)`, `s(n) = T(2n-1) + T(2n)`, `t(n) = T(2n) T(2n+1)`.
pub fn contract(t: &TSeq) -> JacobiParams {
    let len = t.len();
    let s_len = if len == 0 { 0 } else { (len - 1) / 2 + 1 };
    let s = (0..s_len)
        .map(|n| {
            if n == 0 {
                t.get(0).clone()
            } else {
                t.get(2 * n - 1).add(t.get(2 * n))
            }
        })
        .collect();
    let tt = (0..len / 2)
        .map(|n| t.get(2 * n).mul(t.get(2 * n + 1)))
        .collect();
    JacobiParams::new(s, tt)
}

/// `s'(k) = x s(k)`, `t'(k) = x^2 t(k)`: column 0 picks up a factor `x^n`.
pub fn rescale(jp: &JacobiParams, x: &FieldElem) -> JacobiParams {
    let x2 = x.mul(x);
    JacobiParams::new(
        jp.s.iter().map(|v| x.mul(v)).collect(),
        jp.t.iter().map(|v| x2.mul(v)).collect(),
    )
}

/// `sum_k a(n,k) a(m,k) prod_{j<k} t(j)`, which equals `a(n+m, 0)`.
pub fn cross_sum(tri: &Triangle, jp: &JacobiParams, n: usize, m: usize) -> FieldElem {
    let mut acc = FieldElem::zero();
    let mut weight = FieldElem::one();
    for k in 0..=n.min(m) {
        if k > 0 {
            weight = weight.mul(jp.t(k - 1));
        }
        let term = tri.get(n, k as i64).mul(&tri.get(m, k as i64));
        acc = acc.add(&term.mul(&weight));
    }
    acc
}
