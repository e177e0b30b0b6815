//! Truth values of subspace propositions in a prepared state.
//!
//! Two modes are supported. [`Mode::HilbertSublattice`] is the plain
//! bivalent reading: a subspace is true iff it contains the state.
//! [`Mode::Invariant`] only grants a bivalent value to subspaces that belong
//! to an invariant-subspace lattice allocated by the state; every other
//! nontrivial subspace gets [`TruthValue::Gap`]. The zero subspace is always
//! false and the full space always true.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use thiserror::Error;

use crate::context::{allocated_indices, is_lattice_member, ContextError, Structure};
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error(transparent)]
    State(#[from] ContextError),
    #[error("subspace lives in C^{got}, structure in C^{expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Gap,
}

impl TruthValue {
    pub fn is_bivalent(self) -> bool {
        self != TruthValue::Gap
    }

    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "1",
            TruthValue::False => "0",
            TruthValue::Gap => "0/0",
        })
    }
}

impl serde::Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Invariant,
    HilbertSublattice,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Invariant => "invariant",
            Mode::HilbertSublattice => "hilbert",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "invariant" => Ok(Mode::Invariant),
            "hilbert" => Ok(Mode::HilbertSublattice),
            other => Err(format!("unknown mode {other:?} (expected invariant or hilbert)")),
        }
    }
}

fn value_with(st: &Structure, state: &[GaussianRational], s: &Subspace, mode: Mode, allocated: &[usize]) -> TruthValue {
    if s.is_zero() {
        return TruthValue::False;
    }
    if s.is_full() {
        return TruthValue::True;
    }
    let contains = || TruthValue::from_bool(s.contains_vector(state).expect("state length checked"));
    match mode {
        Mode::HilbertSublattice => contains(),
        Mode::Invariant => {
            let certified = allocated
                .iter()
                .any(|&i| is_lattice_member(s, &st.contexts()[i]).expect("dimension checked"));
            if certified {
                contains()
            } else {
                TruthValue::Gap
            }
        }
    }
}

pub fn evaluate(
    st: &Structure,
    state: &[GaussianRational],
    s: &Subspace,
    mode: Mode,
) -> Result<TruthValue, ValuationError> {
    let allocated = allocated_indices(st, state)?;
    if s.ambient_dim() != st.ambient_dim() {
        return Err(ValuationError::DimensionMismatch {
            expected: st.ambient_dim(),
            got: s.ambient_dim(),
        });
    }
    Ok(value_with(st, state, s, mode, &allocated))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    /// `"<context>.<atom set>"` from the first lattice that enumerates it.
    pub id: String,
    pub subspace: Subspace,
    pub value: TruthValue,
    /// Every lattice enumerating this subspace, in structure order.
    pub lattices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub state: Vec<GaussianRational>,
    pub mode: Mode,
    pub entries: Vec<ReportEntry>,
    pub allocated: Vec<String>,
    pub notes: Vec<String>,
    index: HashMap<Subspace, usize>,
}

impl ValuationReport {
    /// Builds a report from explicit values, e.g. a Kochen-Specker
    /// assignment. Entries keep the given order.
    pub fn from_entries(state: Vec<GaussianRational>, mode: Mode, entries: Vec<ReportEntry>) -> ValuationReport {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.subspace.clone(), i))
            .collect();
        ValuationReport {
            state,
            mode,
            entries,
            allocated: Vec::new(),
            notes: Vec::new(),
            index,
        }
    }

    pub fn value_of(&self, s: &Subspace) -> Option<TruthValue> {
        self.entry_of(s).map(|e| e.value)
    }

    pub fn entry_of(&self, s: &Subspace) -> Option<&ReportEntry> {
        self.index.get(s).map(|&i| &self.entries[i])
    }

    pub fn get(&self, id: &str) -> Option<TruthValue> {
        self.entries.iter().find(|e| e.id == id).map(|e| e.value)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("state: ({})\nmode: {}\nallocated:", join(&self.state), self.mode);
        for a in &self.allocated {
            out.push(' ');
            out.push_str(a);
        }
        out.push('\n');
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let width = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
        for e in &self.entries {
            out.push_str(&format!(
                "{:<width$} = {:<3}  {}\n",
                e.id,
                e.value.to_string(),
                e.subspace
            ));
        }
        out
    }
}

fn join(v: &[GaussianRational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

struct Entries<'a>(&'a [ReportEntry]);

impl serde::Serialize for Entries<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for e in self.0 {
            map.serialize_entry(&e.id, &e.value)?;
        }
        map.end()
    }
}

impl serde::Serialize for ValuationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ValuationReport", 5)?;
        st.serialize_field("state", &self.state)?;
        st.serialize_field("mode", self.mode.as_str())?;
        st.serialize_field("allocated", &self.allocated)?;
        st.serialize_field("entries", &Entries(&self.entries))?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

/// Evaluates every distinct enumerated member of every lattice once.
pub fn evaluate_structure(
    st: &Structure,
    state: &[GaussianRational],
    mode: Mode,
) -> Result<ValuationReport, ValuationError> {
    let allocated = allocated_indices(st, state)?;
    let mut entries: Vec<ReportEntry> = Vec::new();
    let mut index: HashMap<Subspace, usize> = HashMap::new();
    for lattice in st.lattices() {
        for m in lattice.members() {
            if let Some(&i) = index.get(&m.subspace) {
                entries[i].lattices.push(lattice.context_name().to_owned());
                continue;
            }
            index.insert(m.subspace.clone(), entries.len());
            entries.push(ReportEntry {
                id: format!("{}.{}", lattice.context_name(), m.label()),
                subspace: m.subspace.clone(),
                value: value_with(st, state, &m.subspace, mode, &allocated),
                lattices: vec![lattice.context_name().to_owned()],
            });
        }
    }
    let mut notes = Vec::new();
    if allocated.is_empty() {
        notes.push("state lies in no atom range".to_owned());
    }
    Ok(ValuationReport {
        state: state.to_vec(),
        mode,
        entries,
        allocated: allocated.iter().map(|&i| st.contexts()[i].name().to_owned()).collect(),
        notes,
        index,
    })
}
