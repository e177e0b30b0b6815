//! Closed linear subspaces of ℂⁿ in canonical form.
//!
//! A subspace is stored as the reduced row echelon basis of its row span.
//! RREF is unique, so equal subspaces have identical bases and equality,
//! hashing and ordering are all structural.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("vector has length {got}, ambient dimension is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    // RREF, no zero rows.
    basis: ExactMatrix,
}

impl Subspace {
    /// The canonical form of the row span of `m`.
    pub fn from_row_span(m: &ExactMatrix) -> Subspace {
        let r = m.rref();
        Subspace {
            ambient_dim: m.cols(),
            basis: r.matrix.take_rows(r.rank),
        }
    }

    pub fn span_of(vectors: &[Vec<GaussianRational>], ambient_dim: usize) -> Result<Subspace, SubspaceError> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(SubspaceError::LengthMismatch {
                expected: ambient_dim,
                got: bad.len(),
            });
        }
        let m = ExactMatrix::from_rows_with_cols(vectors.to_vec(), ambient_dim).expect("lengths checked above");
        Ok(Self::from_row_span(&m))
    }

    /// The column span of `m`.
    pub fn column_span(m: &ExactMatrix) -> Subspace {
        Self::from_row_span(&m.transpose())
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient_dim: n,
            basis: ExactMatrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            ambient_dim: n,
            basis: ExactMatrix::identity(n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_full()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(SubspaceError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &[GaussianRational]) -> Result<(), SubspaceError> {
        if v.len() != self.ambient_dim {
            return Err(SubspaceError::LengthMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Orthogonal complement under `⟨u, v⟩ = Σ conj(uₖ) vₖ`: the kernel of
    /// the entrywise-conjugated basis.
    pub fn orthocomplement(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        Self::from_row_span(&self.basis.conj().null_space())
    }

    /// Closed span of the union. In finite dimension the algebraic sum is closed.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_same_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis).expect("same ambient dimension");
        Ok(Self::from_row_span(&stacked))
    }

    /// Intersection, computed as `(a⊥ ∨ b⊥)⊥`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_same_ambient(other)?;
        Ok(self.orthocomplement().join(&other.orthocomplement())?.orthocomplement())
    }

    pub fn contains_vector(&self, v: &[GaussianRational]) -> Result<bool, SubspaceError> {
        self.check_vector(v)?;
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        // `v` is in the span iff it reduces to zero against the RREF pivots.
        let pivots: Vec<usize> = self
            .basis
            .row_iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("no zero rows"))
            .collect();
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.row_iter().zip(&pivots) {
            let coeff = rest[p].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= &(&coeff * b);
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_same_ambient(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for v in self.basis.row_iter() {
            if !other.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn basis_rows(&self) -> Vec<Vec<GaussianRational>> {
        self.basis.to_rows()
    }
}

/// Ambient dimension, then subspace dimension, then lexicographic order of
/// the canonical basis entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("{0}");
        }
        f.write_str("span{")?;
        for (i, row) in self.basis.row_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(C^{}: {})", self.ambient_dim, self)
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.basis.row_iter())
    }
}
