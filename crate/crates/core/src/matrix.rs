//! Dense exact matrices over the Gaussian rationals.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
}

/// Row-major dense matrix. `entries.len() == rows * cols` always holds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn shape(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix from row vectors. An empty row list needs the column
    /// count supplied separately, see [`ExactMatrix::from_rows_with_cols`].
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<GaussianRational>>, cols: usize) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    /// Convenience for tests and built-in data: integer numerators over a
    /// common denominator.
    pub fn from_ints(rows: &[&[i64]], den: i64) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(move |&v| GaussianRational::ratio(v, den))
            })
            .collect();
        ExactMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = GaussianRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[GaussianRational]> {
        // chunks_exact(0) panics, and a zero-column matrix still has rows.
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        self.row_iter().map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Exact product `self · rhs`.
    pub fn matrix_product(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left: shape(self.rows, self.cols),
                right: shape(rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                left: shape(self.rows, self.cols),
                right: format!("vector of length {}", v.len()),
            });
        }
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter().zip(v).fold(GaussianRational::zero(), |mut acc, (a, b)| {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                    acc
                })
            })
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<ExactMatrix, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch {
                left: shape(self.rows, self.cols),
                right: shape(rhs.rows, rhs.cols),
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, k: &GaussianRational) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GaussianRational::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        self.transpose().conj()
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != below.cols {
            return Err(MatrixError::DimensionMismatch {
                left: shape(self.rows, self.cols),
                right: shape(below.rows, below.cols),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(ExactMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Keeps only the first `n` rows.
    pub fn take_rows(&self, n: usize) -> ExactMatrix {
        let n = n.min(self.rows);
        ExactMatrix {
            rows: n,
            cols: self.cols,
            entries: self.entries[..n * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form. Pivot is the leftmost nonzero column, taken
    /// from the first row with a nonzero entry there, scaled to 1.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = m.get(lead_row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(lead_row, c) * &inv;
                *m.get_mut(lead_row, c) = v;
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let delta = &factor * m.get(lead_row, c);
                    *m.get_mut(r, c) -= &delta;
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self · v = 0}` as the rows of the returned matrix,
    /// one row per free column in increasing column order.
    pub fn null_space(&self) -> ExactMatrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            *basis.get_mut(k, f) = GaussianRational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                *basis.get_mut(k, pcol) = -r.get(prow, f);
            }
        }
        basis
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.get_mut(r, c) = self.get(r, c).clone();
            }
            *aug.get_mut(r, n + r) = GaussianRational::one();
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.get_mut(r, c) = matrix.get(r, n + c).clone();
            }
        }
        Some(inv)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}
