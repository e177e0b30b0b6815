//! Measurement contexts, their invariant-subspace lattices and structures of
//! several intertwined contexts.

use std::collections::HashSet;

use num_traits::Zero;
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::operators::Projector;
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("context {context}: needs at least 2 projectors, got {got}")]
    TooFewAtoms { context: String, got: usize },
    #[error("context {context}: projector {atom} is trivial (0 or 1)")]
    TrivialAtom { context: String, atom: String },
    #[error("context {context}: duplicate projector name {atom}")]
    DuplicateName { context: String, atom: String },
    #[error("context {context}: projectors {first} and {second} are not orthogonal")]
    NotOrthogonal {
        context: String,
        first: String,
        second: String,
    },
    #[error("context {context}: projectors do not sum to the identity")]
    IncompleteSum { context: String },
    #[error("context {context}: dimension {got} does not match {expected}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },
    #[error("duplicate context name {0}")]
    DuplicateContext(String),
    #[error("structure has no contexts")]
    Empty,
    #[error("state vector is zero")]
    ZeroState,
    #[error("state has length {got}, ambient dimension is {expected}")]
    StateLength { expected: usize, got: usize },
}

/// A resolution of the identity into mutually orthogonal nontrivial projectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    name: String,
    atoms: Vec<Projector>,
    ranges: Vec<Subspace>,
}

impl Context {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[Projector] {
        &self.atoms
    }

    /// Canonical ranges of the atoms, index-aligned with [`Context::atoms`].
    pub fn atom_ranges(&self) -> &[Subspace] {
        &self.ranges
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].dim()
    }

    pub fn atom_index_of(&self, range: &Subspace) -> Option<usize> {
        self.ranges.iter().position(|r| r == range)
    }
}

pub fn validate_context(name: impl Into<String>, projectors: Vec<Projector>) -> Result<Context, ContextError> {
    let context = name.into();
    if projectors.len() < 2 {
        return Err(ContextError::TooFewAtoms {
            context,
            got: projectors.len(),
        });
    }
    let n = projectors[0].dim();
    let mut names = HashSet::new();
    for p in &projectors {
        if p.dim() != n {
            return Err(ContextError::DimensionMismatch {
                context,
                expected: n,
                got: p.dim(),
            });
        }
        if p.is_trivial() {
            return Err(ContextError::TrivialAtom {
                context,
                atom: p.name().to_owned(),
            });
        }
        if !names.insert(p.name()) {
            return Err(ContextError::DuplicateName {
                context,
                atom: p.name().to_owned(),
            });
        }
    }
    for (i, p) in projectors.iter().enumerate() {
        for q in &projectors[i + 1..] {
            let pq = p.matrix().matrix_product(q.matrix()).expect("same dimension");
            // For Hermitian p, q: qp = (pq)†, so one product suffices.
            if !pq.is_zero() {
                return Err(ContextError::NotOrthogonal {
                    context,
                    first: p.name().to_owned(),
                    second: q.name().to_owned(),
                });
            }
        }
    }
    let sum = projectors
        .iter()
        .try_fold(ExactMatrix::zeros(n, n), |acc, p| acc.add(p.matrix()))
        .expect("same dimension");
    if !sum.is_identity() {
        return Err(ContextError::IncompleteSum { context });
    }
    let ranges = projectors.iter().map(Projector::range).collect();
    Ok(Context {
        name: context,
        atoms: projectors,
        ranges,
    })
}

/// One enumerated element of an invariant-subspace lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMember {
    pub subspace: Subspace,
    /// Zero-based atom indices whose ranges sum to `subspace`.
    pub atoms: Vec<usize>,
}

impl LatticeMember {
    /// Atom-set label with one-based indices: `"1"`, `"1+2+3"`; `"0"` for
    /// the empty sum.
    pub fn label(&self) -> String {
        if self.atoms.is_empty() {
            return "0".to_owned();
        }
        self.atoms
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Subset sums of a context's atom ranges, sorted by dimension and then by
/// canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantLattice {
    context: String,
    members: Vec<LatticeMember>,
}

impl InvariantLattice {
    pub fn context_name(&self) -> &str {
        &self.context
    }

    pub fn members(&self) -> &[LatticeMember] {
        &self.members
    }

    pub fn subspaces(&self) -> impl Iterator<Item = &Subspace> {
        self.members.iter().map(|m| &m.subspace)
    }

    pub fn member(&self, s: &Subspace) -> Option<&LatticeMember> {
        self.members
            .binary_search_by(|m| m.subspace.cmp(s))
            .ok()
            .map(|i| &self.members[i])
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.member(s).is_some()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn invariant_lattice(c: &Context) -> InvariantLattice {
    let k = c.atoms.len();
    assert!(k < usize::BITS as usize, "too many atoms to enumerate");
    let n = c.dim();
    let mut members: Vec<LatticeMember> = Vec::with_capacity(1 << k);
    // Sizes ascending, then lexicographic index sets, so the first label
    // kept for a subspace is the smallest one.
    let mut subsets: Vec<Vec<usize>> = (0usize..1 << k)
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut seen = HashSet::new();
    for atoms in subsets {
        let subspace = atoms
            .iter()
            .try_fold(Subspace::zero(n), |acc, &i| acc.join(&c.ranges[i]))
            .expect("same dimension");
        if seen.insert(subspace.clone()) {
            members.push(LatticeMember { subspace, atoms });
        }
    }
    members.sort_by(|a, b| a.subspace.cmp(&b.subspace));
    InvariantLattice {
        context: c.name.clone(),
        members,
    }
}

/// True iff `s` is invariant under every atom of `c`.
pub fn is_lattice_member(s: &Subspace, c: &Context) -> Result<bool, ContextError> {
    if s.ambient_dim() != c.dim() {
        return Err(ContextError::DimensionMismatch {
            context: c.name.clone(),
            expected: c.dim(),
            got: s.ambient_dim(),
        });
    }
    Ok(c.atoms
        .iter()
        .all(|p| p.leaves_invariant(s).expect("dimension checked")))
}

/// Members common to both lattices, in `a`'s order. Includes `{0}` and the
/// full space whenever the ambient dimensions agree.
pub fn shared_members(a: &InvariantLattice, b: &InvariantLattice) -> Vec<Subspace> {
    a.subspaces().filter(|s| b.contains(s)).cloned().collect()
}

/// Several contexts on one Hilbert space, with their enumerated lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    ambient_dim: usize,
    contexts: Vec<Context>,
    lattices: Vec<InvariantLattice>,
}

impl Structure {
    pub fn new(contexts: Vec<Context>) -> Result<Structure, ContextError> {
        let first = contexts.first().ok_or(ContextError::Empty)?;
        let ambient_dim = first.dim();
        let mut names = HashSet::new();
        for c in &contexts {
            if c.dim() != ambient_dim {
                return Err(ContextError::DimensionMismatch {
                    context: c.name.clone(),
                    expected: ambient_dim,
                    got: c.dim(),
                });
            }
            if !names.insert(c.name.as_str()) {
                return Err(ContextError::DuplicateContext(c.name.clone()));
            }
        }
        let lattices = contexts.iter().map(invariant_lattice).collect();
        Ok(Structure {
            ambient_dim,
            contexts,
            lattices,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn lattices(&self) -> &[InvariantLattice] {
        &self.lattices
    }

    pub fn context_index(&self, name: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.name == name)
    }

    pub fn context(&self, name: &str) -> Option<&Context> {
        self.context_index(name).map(|i| &self.contexts[i])
    }

    pub fn lattice(&self, name: &str) -> Option<&InvariantLattice> {
        self.context_index(name).map(|i| &self.lattices[i])
    }

    /// A structure made of a subset of this one's contexts, in the given order.
    pub fn restrict(&self, names: &[&str]) -> Option<Structure> {
        let contexts = names
            .iter()
            .map(|n| self.context(n).cloned())
            .collect::<Option<Vec<_>>>()?;
        Structure::new(contexts).ok()
    }

    /// Every distinct enumerated member, in order of first appearance
    /// (context order, then lattice order).
    pub fn distinct_members(&self) -> Vec<&Subspace> {
        let mut seen = HashSet::new();
        self.lattices
            .iter()
            .flat_map(InvariantLattice::subspaces)
            .filter(|s| seen.insert(*s))
            .collect()
    }

    /// Names of the lattices whose enumeration contains `s`.
    pub fn lattices_containing(&self, s: &Subspace) -> Vec<&str> {
        self.lattices
            .iter()
            .filter(|l| l.contains(s))
            .map(InvariantLattice::context_name)
            .collect()
    }

    /// A nontrivial member enumerated by at least two lattices.
    pub fn is_shared(&self, s: &Subspace) -> bool {
        !s.is_trivial() && self.lattices.iter().filter(|l| l.contains(s)).count() >= 2
    }

    pub fn check_state(&self, state: &[GaussianRational]) -> Result<(), ContextError> {
        if state.len() != self.ambient_dim {
            return Err(ContextError::StateLength {
                expected: self.ambient_dim,
                got: state.len(),
            });
        }
        if state.iter().all(Zero::is_zero) {
            return Err(ContextError::ZeroState);
        }
        Ok(())
    }
}

/// Lattices of contexts that have an atom whose range contains `state`.
pub fn allocated_lattices<'a>(
    st: &'a Structure,
    state: &[GaussianRational],
) -> Result<Vec<&'a InvariantLattice>, ContextError> {
    Ok(allocated_indices(st, state)?
        .into_iter()
        .map(|i| &st.lattices[i])
        .collect())
}

pub(crate) fn allocated_indices(st: &Structure, state: &[GaussianRational]) -> Result<Vec<usize>, ContextError> {
    st.check_state(state)?;
    Ok(st
        .contexts
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.ranges
                .iter()
                .any(|r| r.contains_vector(state).expect("length checked"))
        })
        .map(|(i, _)| i)
        .collect())
}
