use std::fmt;

use crate::field::FieldElem;
use crate::sequences::{MomentSeq, SequenceError};

/// Dense square matrix over Q(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl SquareMatrix {
    /// # Panics
    /// If `entries.len() != n * n`.
    pub fn new(n: usize, entries: Vec<FieldElem>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        SquareMatrix { n, entries }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> FieldElem) -> Self {
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        SquareMatrix { n, entries }
    }

    /// # Panics
    /// If the rows are ragged or not square.
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
        SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElem::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        SquareMatrix::from_fn(n, |i, j| {
            if i == j {
                FieldElem::one()
            } else {
                FieldElem::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElem]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn transpose(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// # Panics
    /// On a dimension mismatch.
    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SquareMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(FieldElem::zero(), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j)))
            })
        })
    }

    /// `self * diag(d)`.
    pub fn mul_diag(&self, d: &[FieldElem]) -> SquareMatrix {
        assert_eq!(self.n, d.len(), "dimension mismatch");
        SquareMatrix::from_fn(self.n, |i, j| self.get(i, j).mul(&d[j]))
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// `(term(i + j + m))_{0 <= i, j < n}`.
pub fn hankel_matrix(seq: &MomentSeq, n: usize, m: usize) -> Result<SquareMatrix, SequenceError> {
    let count = (2 * n + m).saturating_sub(1);
    let terms = seq.terms_upto(count)?;
    Ok(SquareMatrix::from_fn(n, |i, j| terms[i + j + m].clone()))
}
