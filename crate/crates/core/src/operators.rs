//! Orthogonal projectors and the invariance test.

use std::fmt;

use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("projector {name}: matrix is {rows}x{cols}, not square")]
    NotSquare { name: String, rows: usize, cols: usize },
    #[error("projector {name}: not Hermitian (P != P†)")]
    NotHermitian { name: String },
    #[error("projector {name}: not idempotent (P·P != P)")]
    NotIdempotent { name: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// A Hermitian idempotent matrix with a name and its cached rank.
#[derive(Clone, PartialEq, Eq)]
pub struct Projector {
    name: String,
    matrix: ExactMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(name: impl Into<String>, matrix: ExactMatrix) -> Result<Projector, OperatorError> {
        validate_projector(name, matrix)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 || self.rank == self.dim()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Projector {
        self.name = name.into();
        self
    }

    /// Column space of the matrix.
    pub fn range(&self) -> Subspace {
        Subspace::column_span(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_row_span(&self.matrix.null_space())
    }

    /// `1 − P`.
    pub fn complement(&self) -> Projector {
        let n = self.dim();
        Projector {
            name: format!("1-{}", self.name),
            matrix: ExactMatrix::identity(n).sub(&self.matrix).expect("square"),
            rank: n - self.rank,
        }
    }

    fn check_dim(&self, n: usize) -> Result<(), OperatorError> {
        if self.dim() != n {
            return Err(OperatorError::DimensionMismatch {
                left: self.dim(),
                right: n,
            });
        }
        Ok(())
    }

    pub fn commutes(&self, other: &Projector) -> Result<bool, OperatorError> {
        other.check_dim(self.dim())?;
        let pq = self.matrix.matrix_product(&other.matrix).expect("same dimension");
        let qp = other.matrix.matrix_product(&self.matrix).expect("same dimension");
        Ok(pq == qp)
    }

    /// True iff `P·v ∈ s` for every basis vector `v` of `s`; by linearity
    /// that is `P·s ⊆ s`.
    pub fn leaves_invariant(&self, s: &Subspace) -> Result<bool, OperatorError> {
        self.check_dim(s.ambient_dim())?;
        for v in s.basis().row_iter() {
            let image = self.matrix.apply(v).expect("same dimension");
            if !s.contains_vector(&image).expect("same dimension") {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Projector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Projector({}, rank {}, {})", self.name, self.rank, self.matrix)
    }
}

/// Accepts `m` iff it is square, Hermitian and idempotent.
pub fn validate_projector(name: impl Into<String>, m: ExactMatrix) -> Result<Projector, OperatorError> {
    let name = name.into();
    if !m.is_square() {
        return Err(OperatorError::NotSquare {
            name,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.adjoint() != m {
        return Err(OperatorError::NotHermitian { name });
    }
    if m.matrix_product(&m).expect("square") != m {
        return Err(OperatorError::NotIdempotent { name });
    }
    let rank = m.rank();
    Ok(Projector { name, matrix: m, rank })
}

pub fn range_of(p: &Projector) -> Subspace {
    p.range()
}

pub fn kernel_of(p: &Projector) -> Subspace {
    p.kernel()
}

/// The orthogonal projector onto `s`, as `A (A†A)⁻¹ A†` where the columns
/// of `A` are the canonical basis of `s`. No square roots are needed, so
/// entries stay in ℚ(i).
pub fn projector_onto(s: &Subspace) -> Projector {
    let n = s.ambient_dim();
    let matrix = if s.is_zero() {
        ExactMatrix::zeros(n, n)
    } else {
        let a = s.basis().transpose();
        let a_dag = a.adjoint();
        let gram = a_dag.matrix_product(&a).expect("shapes agree");
        let gram_inv = gram
            .inverse()
            .expect("Gram matrix of independent columns is invertible");
        a.matrix_product(&gram_inv)
            .and_then(|m| m.matrix_product(&a_dag))
            .expect("shapes agree")
    };
    Projector {
        name: format!("P[{s}]"),
        matrix,
        rank: s.dim(),
    }
}

pub fn commutes(p: &Projector, q: &Projector) -> Result<bool, OperatorError> {
    p.commutes(q)
}

pub fn is_invariant(s: &Subspace, p: &Projector) -> Result<bool, OperatorError> {
    p.leaves_invariant(s)
}
