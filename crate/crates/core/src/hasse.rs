//! Hasse diagrams of lattice members and their Graphviz rendering.

use std::fmt::Write;

use thiserror::Error;

use crate::context::Structure;
use crate::subspace::Subspace;
use crate::valuation::{TruthValue, ValuationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HasseError {
    #[error("unknown scope {0:?}: not a context name and not \"all\"")]
    UnknownScope(String),
    #[error("valuation report has no value for {0}")]
    MissingValuation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    Lattice(String),
    All,
}

impl Scope {
    pub fn parse(text: &str) -> Scope {
        if text == "all" {
            Scope::All
        } else {
            Scope::Lattice(text.to_owned())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseNode {
    pub id: String,
    pub label: String,
    pub subspace: Subspace,
    pub value: TruthValue,
    pub shared: bool,
    /// `(context, atom-set label)` for every lattice enumerating the node.
    pub memberships: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseGraph {
    pub nodes: Vec<HasseNode>,
    /// `(lower, upper)` node indices.
    pub edges: Vec<(usize, usize)>,
}

/// Covering pairs of the strict containment order: `(a, b)` with `a ⊊ b`
/// and no member strictly between them. Members must be distinct and share
/// one ambient dimension.
pub fn transitive_reduction(members: &[Subspace]) -> Vec<(usize, usize)> {
    let m = members.len();
    let mut below = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && members[i].dim() < members[j].dim() {
                below[i][j] = members[i].is_subspace_of(&members[j]).expect("same ambient dimension");
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if below[i][j] && !(0..m).any(|k| below[i][k] && below[k][j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn build_graph(st: &Structure, report: &ValuationReport, scope: &Scope) -> Result<HasseGraph, HasseError> {
    let members: Vec<(Subspace, Option<String>)> = match scope {
        Scope::Lattice(name) => {
            let lattice = st.lattice(name).ok_or_else(|| HasseError::UnknownScope(name.clone()))?;
            lattice
                .members()
                .iter()
                .map(|m| (m.subspace.clone(), Some(m.label())))
                .collect()
        }
        Scope::All => st.distinct_members().into_iter().map(|s| (s.clone(), None)).collect(),
    };
    let mut nodes = Vec::with_capacity(members.len());
    for (subspace, local_label) in members {
        let entry = report
            .entry_of(&subspace)
            .ok_or_else(|| HasseError::MissingValuation(subspace.to_string()))?;
        let memberships = st
            .lattices()
            .iter()
            .filter_map(|l| l.member(&subspace).map(|m| (l.context_name().to_owned(), m.label())))
            .collect();
        nodes.push(HasseNode {
            id: entry.id.clone(),
            label: local_label.unwrap_or_else(|| entry.id.clone()),
            shared: st.is_shared(&subspace),
            value: entry.value,
            subspace,
            memberships,
        });
    }
    let subspaces: Vec<Subspace> = nodes.iter().map(|n| n.subspace.clone()).collect();
    Ok(HasseGraph {
        edges: transitive_reduction(&subspaces),
        nodes,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn node_style(value: TruthValue, shared: bool) -> String {
    let mut style = match value {
        TruthValue::True => "shape=box style=filled fillcolor=black fontcolor=white",
        TruthValue::False => "shape=circle style=filled fillcolor=black fontcolor=white",
        TruthValue::Gap => "shape=circle style=solid",
    }
    .to_owned();
    if shared {
        style.push_str(" color=grey penwidth=3");
    }
    style
}

impl HasseGraph {
    /// DOT text with `rankdir=BT`. A lattice scope wraps the nodes in one
    /// cluster; the whole-structure scope lists context memberships in
    /// tooltips instead, since a node can sit in at most one cluster.
    pub fn to_dot(&self, scope: &Scope) -> String {
        let mut out = String::new();
        let (graph_name, indent) = match scope {
            Scope::Lattice(name) => (name.as_str(), "    "),
            Scope::All => ("structure", "  "),
        };
        writeln!(out, "digraph {} {{", quote(graph_name)).unwrap();
        out.push_str("  rankdir=BT;\n");
        if let Scope::Lattice(name) = scope {
            writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{name}"))).unwrap();
            writeln!(out, "    label={};", quote(&format!("L({name})"))).unwrap();
        }
        for n in &self.nodes {
            let mut attrs = format!("label={} {}", quote(&n.label), node_style(n.value, n.shared));
            if matches!(scope, Scope::All) {
                let tip = n
                    .memberships
                    .iter()
                    .map(|(c, l)| format!("{c}:{l}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                write!(attrs, " tooltip={}", quote(&tip)).unwrap();
            }
            writeln!(out, "{indent}{} [{attrs}];", quote(&n.id)).unwrap();
        }
        if matches!(scope, Scope::Lattice(_)) {
            out.push_str("  }\n");
        }
        for &(lo, hi) in &self.edges {
            writeln!(out, "  {} -> {};", quote(&self.nodes[lo].id), quote(&self.nodes[hi].id)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn emit_dot(st: &Structure, report: &ValuationReport, scope: &Scope) -> Result<String, HasseError> {
    Ok(build_graph(st, report, scope)?.to_dot(scope))
}
