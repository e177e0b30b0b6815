//! Exact quantum logic on finite-dimensional Hilbert spaces.
//!
//! Subspaces of ℂⁿ are represented exactly over the Gaussian rationals.
//! On top of that the crate builds invariant-subspace lattices of
//! measurement contexts, assigns three-valued (true / false / gap) truth
//! values to subspace propositions, checks the per-context admissibility
//! rules, enumerates Kochen-Specker colourings and draws Hasse diagrams.
//!
//! ```
//! use qlogic::{datasets, evaluate, io::parse_state, Mode, TruthValue};
//!
//! let qubit = datasets::pauli_qubit();
//! let up = parse_state("1,0").unwrap();
//! let x_plus = qubit.context("Sigma_x").unwrap().atom_ranges()[0].clone();
//! assert_eq!(evaluate(&qubit, &up, &x_plus, Mode::Invariant).unwrap(), TruthValue::Gap);
//! assert_eq!(evaluate(&qubit, &up, &x_plus, Mode::HilbertSublattice).unwrap(), TruthValue::False);
//! ```

pub mod admissibility;
pub mod cli;
pub mod context;
pub mod datasets;
pub mod hasse;
pub mod io;
pub mod matrix;
pub mod operators;
pub mod scalar;
pub mod subspace;
pub mod valuation;

#[cfg(test)]
mod testutil;

pub use admissibility::{check_admissibility, ks_search, AdmissibilityReport, KsAssignment, RuleStatus};
pub use context::{
    allocated_lattices, invariant_lattice, is_lattice_member, shared_members, validate_context, Context,
    InvariantLattice, Structure,
};
pub use hasse::{emit_dot, transitive_reduction, HasseGraph, Scope};
pub use matrix::ExactMatrix;
pub use operators::{commutes, is_invariant, kernel_of, projector_onto, range_of, validate_projector, Projector};
pub use scalar::{GaussianRational, ScalarError};
pub use subspace::Subspace;
pub use valuation::{evaluate, evaluate_structure, Mode, TruthValue, ValuationReport};
