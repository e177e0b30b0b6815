//! Per-context admissibility rules and exhaustive Kochen-Specker colouring.
//!
//! Rule 1: if some atom of a context is true, every other atom is false.
//! Rule 2: if some atom is false, every other atom is bivalent and at most
//! one atom is true.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::Structure;
use crate::subspace::Subspace;
use crate::valuation::{Mode, ReportEntry, TruthValue, ValuationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("report has no entry for atom {atom} of context {context}")]
    MissingAtomEntry { context: String, atom: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleStatus {
    Satisfied,
    Violated,
    Vacuous,
}

impl fmt::Display for RuleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextRecord {
    pub context: String,
    pub true_count: usize,
    pub false_count: usize,
    pub gap_count: usize,
    pub rule1: RuleStatus,
    pub rule2: RuleStatus,
    /// All atoms bivalent and none true. Reported, not judged.
    pub no_true_atom: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub contexts: Vec<ContextRecord>,
    /// No context violates rule 1.
    pub rule1_holds: bool,
    /// No context violates rule 2.
    pub rule2_holds: bool,
}

impl AdmissibilityReport {
    pub fn record(&self, context: &str) -> Option<&ContextRecord> {
        self.contexts.iter().find(|r| r.context == context)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.contexts {
            out.push_str(&format!(
                "{}: true={} false={} gap={} rule1={} rule2={}{}\n",
                r.context,
                r.true_count,
                r.false_count,
                r.gap_count,
                r.rule1,
                r.rule2,
                if r.no_true_atom { " note=NoTrueAtom" } else { "" }
            ));
        }
        out.push_str(&format!(
            "overall: rule1={} rule2={}\n",
            if self.rule1_holds { "holds" } else { "fails" },
            if self.rule2_holds { "holds" } else { "fails" }
        ));
        out
    }
}

/// Applies both rules to the atom values of one context.
pub fn judge_context(values: &[TruthValue]) -> (RuleStatus, RuleStatus) {
    let count = |t| values.iter().filter(|&&v| v == t).count();
    let (t, f, g) = (
        count(TruthValue::True),
        count(TruthValue::False),
        count(TruthValue::Gap),
    );
    let k = values.len();
    // "some atom true and some *other* atom not false": with one true atom
    // the others are the remaining k - 1; with two or more, a true atom is
    // itself a non-false other.
    let rule1 = if t == 0 {
        RuleStatus::Vacuous
    } else if t > 1 || f < k - 1 {
        RuleStatus::Violated
    } else {
        RuleStatus::Satisfied
    };
    let rule2 = if f == 0 {
        RuleStatus::Vacuous
    } else if g > 0 || t > 1 {
        RuleStatus::Violated
    } else {
        RuleStatus::Satisfied
    };
    (rule1, rule2)
}

pub fn check_admissibility(
    st: &Structure,
    report: &ValuationReport,
) -> Result<AdmissibilityReport, AdmissibilityError> {
    let mut contexts = Vec::with_capacity(st.contexts().len());
    for c in st.contexts() {
        let values = c
            .atoms()
            .iter()
            .zip(c.atom_ranges())
            .map(|(p, r)| {
                report.value_of(r).ok_or_else(|| AdmissibilityError::MissingAtomEntry {
                    context: c.name().to_owned(),
                    atom: p.name().to_owned(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (rule1, rule2) = judge_context(&values);
        let count = |t| values.iter().filter(|&&v| v == t).count();
        let (t, f, g) = (
            count(TruthValue::True),
            count(TruthValue::False),
            count(TruthValue::Gap),
        );
        contexts.push(ContextRecord {
            context: c.name().to_owned(),
            true_count: t,
            false_count: f,
            gap_count: g,
            rule1,
            rule2,
            no_true_atom: t == 0 && g == 0,
        });
    }
    Ok(AdmissibilityReport {
        rule1_holds: contexts.iter().all(|r| r.rule1 != RuleStatus::Violated),
        rule2_holds: contexts.iter().all(|r| r.rule2 != RuleStatus::Violated),
        contexts,
    })
}

/// A global 0/1 assignment on the distinct atom ranges of a structure with
/// exactly one true atom per context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsAssignment {
    /// Distinct atom ranges in order of first appearance, with their value.
    pub values: Vec<(Subspace, bool)>,
    /// Zero-based index of the true atom, per context in structure order.
    pub choices: Vec<(String, usize)>,
}

impl KsAssignment {
    pub fn value_of(&self, s: &Subspace) -> Option<bool> {
        self.values.iter().find(|(r, _)| r == s).map(|&(_, v)| v)
    }

    /// `"S1:1 S2:1 S6:3"`, one-based atom indices.
    pub fn to_line(&self) -> String {
        self.choices
            .iter()
            .map(|(c, i)| format!("{c}:{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// An atoms-only valuation report, for feeding back into
    /// [`check_admissibility`].
    pub fn to_report(&self) -> ValuationReport {
        let entries = self
            .values
            .iter()
            .enumerate()
            .map(|(i, (s, v))| ReportEntry {
                id: format!("atom{}", i + 1),
                subspace: s.clone(),
                value: TruthValue::from_bool(*v),
                lattices: Vec::new(),
            })
            .collect();
        ValuationReport::from_entries(Vec::new(), Mode::HilbertSublattice, entries)
    }
}

struct Search<'a> {
    // Per context, the global key of each atom.
    keys: Vec<Vec<usize>>,
    names: Vec<&'a str>,
    values: Vec<Option<bool>>,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.keys.len() {
            self.found.push(self.chosen.clone());
            return;
        }
        for pick in 0..self.keys[depth].len() {
            let ok = self.keys[depth].iter().enumerate().all(|(i, &k)| match self.values[k] {
                Some(v) => v == (i == pick),
                None => true,
            });
            if !ok {
                continue;
            }
            let mut newly = Vec::new();
            for (i, &k) in self.keys[depth].iter().enumerate() {
                if self.values[k].is_none() {
                    self.values[k] = Some(i == pick);
                    newly.push(k);
                }
            }
            self.chosen.push(pick);
            self.run(depth + 1);
            self.chosen.pop();
            for k in newly {
                self.values[k] = None;
            }
        }
    }
}

/// Depth-first enumeration of all assignments, in lexicographic order of
/// the per-context choices. An empty result proves the structure admits no
/// Kochen-Specker colouring.
pub fn ks_search(st: &Structure) -> Vec<KsAssignment> {
    let mut ranges: Vec<Subspace> = Vec::new();
    let mut key_of: HashMap<Subspace, usize> = HashMap::new();
    let keys: Vec<Vec<usize>> = st
        .contexts()
        .iter()
        .map(|c| {
            c.atom_ranges()
                .iter()
                .map(|r| {
                    *key_of.entry(r.clone()).or_insert_with(|| {
                        ranges.push(r.clone());
                        ranges.len() - 1
                    })
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        names: st.contexts().iter().map(|c| c.name()).collect(),
        values: vec![None; ranges.len()],
        keys,
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);

    search
        .found
        .iter()
        .map(|picks| {
            let mut values = vec![false; ranges.len()];
            for (ctx, &pick) in picks.iter().enumerate() {
                values[search.keys[ctx][pick]] = true;
            }
            KsAssignment {
                values: ranges.iter().cloned().zip(values).collect(),
                choices: search
                    .names
                    .iter()
                    .map(|n| n.to_string())
                    .zip(picks.iter().copied())
                    .collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{validate_context, Context};
    use crate::datasets::{cabello_3, pauli_qubit};
    use crate::matrix::ExactMatrix;
    use crate::operators::{projector_onto, validate_projector};
    use crate::testutil::vec_of;
    use crate::valuation::evaluate_structure;
    use TruthValue::*;

    #[test]
    fn rule_table() {
        use RuleStatus::*;
        assert_eq!(judge_context(&[True, False, False]), (Satisfied, Satisfied));
        assert_eq!(judge_context(&[Gap, Gap]), (Vacuous, Vacuous));
        assert_eq!(judge_context(&[False, False]), (Vacuous, Satisfied));
        assert_eq!(judge_context(&[True, Gap]), (Violated, Vacuous));
        assert_eq!(judge_context(&[False, Gap]), (Vacuous, Violated));
        assert_eq!(judge_context(&[True, True, False]), (Violated, Violated));
        assert_eq!(judge_context(&[True, True]), (Violated, Vacuous));
    }

    #[test]
    fn qubit_reports() {
        let q = pauli_qubit();
        let up = vec_of(&[1, 0]);
        let inv = check_admissibility(&q, &evaluate_structure(&q, &up, Mode::Invariant).unwrap()).unwrap();
        let z = inv.record("Sigma_z").unwrap();
        assert_eq!((z.rule1, z.rule2), (RuleStatus::Satisfied, RuleStatus::Satisfied));
        let x = inv.record("Sigma_x").unwrap();
        assert_eq!((x.rule1, x.rule2), (RuleStatus::Vacuous, RuleStatus::Vacuous));
        assert_eq!(x.gap_count, 2);
        assert!(!x.no_true_atom);

        let hil = check_admissibility(&q, &evaluate_structure(&q, &up, Mode::HilbertSublattice).unwrap()).unwrap();
        assert!(hil.contexts.iter().all(|r| r.rule2 == RuleStatus::Satisfied));
        assert!(hil.record("Sigma_y").unwrap().no_true_atom);
        assert!(hil.rule1_holds && hil.rule2_holds);
    }

    #[test]
    fn cabello_report() {
        let st = cabello_3();
        let r = evaluate_structure(&st, &vec_of(&[0, 0, 0, 1]), Mode::Invariant).unwrap();
        let a = check_admissibility(&st, &r).unwrap();
        let s1 = a.record("S1").unwrap();
        assert_eq!((s1.true_count, s1.false_count, s1.gap_count), (1, 3, 0));
        assert_eq!(s1.rule1, RuleStatus::Satisfied);
        assert_eq!(a.record("S2").unwrap().rule1, RuleStatus::Satisfied);
        let s6 = a.record("S6").unwrap();
        assert_eq!(s6.gap_count, 4);
        assert_eq!((s6.rule1, s6.rule2), (RuleStatus::Vacuous, RuleStatus::Vacuous));
        let text = a.to_text();
        assert!(text.contains("S6: true=0 false=0 gap=4 rule1=Vacuous rule2=Vacuous\n"));
    }

    #[test]
    fn missing_atom_entry() {
        let st = cabello_3();
        let q = pauli_qubit();
        let r = evaluate_structure(&q, &vec_of(&[1, 0]), Mode::Invariant).unwrap();
        assert_eq!(
            check_admissibility(&st, &r),
            Err(AdmissibilityError::MissingAtomEntry {
                context: "S1".into(),
                atom: "P1_1".into()
            })
        );
    }

    /// Brute force over the full product of per-context choices, keeping
    /// the tuples where every shared atom range gets one value.
    fn brute_force_count(st: &Structure) -> usize {
        let ctxs = st.contexts();
        let total: usize = ctxs.iter().map(|c| c.atoms().len()).product();
        let mut count = 0;
        for mut code in 0..total {
            let picks: Vec<usize> = ctxs
                .iter()
                .map(|c| {
                    let k = c.atoms().len();
                    let p = code % k;
                    code /= k;
                    p
                })
                .collect();
            let mut ok = true;
            for (a, ca) in ctxs.iter().enumerate() {
                for (b, cb) in ctxs.iter().enumerate() {
                    for (i, ri) in ca.atom_ranges().iter().enumerate() {
                        for (j, rj) in cb.atom_ranges().iter().enumerate() {
                            if ri == rj && (i == picks[a]) != (j == picks[b]) {
                                ok = false;
                            }
                        }
                    }
                }
            }
            count += ok as usize;
        }
        count
    }

    #[test]
    fn ks_counts_match_brute_force() {
        let q = pauli_qubit();
        let z = q.restrict(&["Sigma_z"]).unwrap();
        assert_eq!(ks_search(&z).len(), 2);
        assert_eq!(brute_force_count(&z), 2);

        let st = cabello_3();
        let s12 = st.restrict(&["S1", "S2"]).unwrap();
        assert_eq!(brute_force_count(&s12), 10);
        assert_eq!(ks_search(&s12).len(), 10);

        let all = ks_search(&st);
        assert!(!all.is_empty());
        assert_eq!(all.len(), brute_force_count(&st));
        assert_eq!(ks_search(&q).len(), brute_force_count(&q));
        assert_eq!(ks_search(&q).len(), 8);
    }

    #[test]
    fn ks_output_order_and_lines() {
        let st = cabello_3().restrict(&["S1", "S2"]).unwrap();
        let lines: Vec<_> = ks_search(&st).iter().map(KsAssignment::to_line).collect();
        assert_eq!(lines[0], "S1:1 S2:1");
        assert_eq!(lines[1], "S1:2 S2:2");
        assert_eq!(lines.last().unwrap(), "S1:4 S2:4");
    }

    #[test]
    fn ks_assignments_are_admissible() {
        for st in [pauli_qubit(), cabello_3()] {
            for a in ks_search(&st) {
                let report = check_admissibility(&st, &a.to_report()).unwrap();
                for r in &report.contexts {
                    assert_eq!(r.rule1, RuleStatus::Satisfied);
                    assert!(matches!(r.rule2, RuleStatus::Satisfied | RuleStatus::Vacuous));
                }
            }
        }
    }

    fn reversed(st: &Structure) -> Structure {
        let contexts: Vec<Context> = st
            .contexts()
            .iter()
            .rev()
            .map(|c| {
                let atoms = c.atoms().iter().rev().cloned().collect();
                validate_context(c.name(), atoms).unwrap()
            })
            .collect();
        Structure::new(contexts).unwrap()
    }

    #[test]
    fn ks_count_invariant_under_reordering() {
        for st in [pauli_qubit(), cabello_3()] {
            assert_eq!(ks_search(&st).len(), ks_search(&reversed(&st)).len());
        }
    }

    #[test]
    fn conflicting_shared_atoms_are_pruned() {
        // Context A = {e1, e2, e3+e4 block}, B = {e1, e2, two lines in the
        // e3/e4 plane}. Two shared atoms: B's true atom must match A's.
        let n = 4;
        let line = |v: &[i64]| projector_onto(&crate::Subspace::span_of(&[vec_of(v)], n).unwrap());
        let named = |p: crate::Projector, s: &str| validate_projector(s, p.matrix().clone()).unwrap();
        let block = validate_projector(
            "e34",
            ExactMatrix::from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]], 1),
        )
        .unwrap();
        let a = validate_context(
            "A",
            vec![
                named(line(&[1, 0, 0, 0]), "e1"),
                named(line(&[0, 1, 0, 0]), "e2"),
                block,
            ],
        )
        .unwrap();
        let b = validate_context(
            "B",
            vec![
                named(line(&[1, 0, 0, 0]), "e1"),
                named(line(&[0, 1, 0, 0]), "e2"),
                named(line(&[0, 0, 1, 1]), "f"),
                named(line(&[0, 0, 1, -1]), "g"),
            ],
        )
        .unwrap();
        let st = Structure::new(vec![a, b]).unwrap();
        let lines: Vec<_> = ks_search(&st).iter().map(KsAssignment::to_line).collect();
        // e1/e1, e2/e2, and block with f or g.
        assert_eq!(lines, vec!["A:1 B:1", "A:2 B:2", "A:3 B:3", "A:3 B:4"]);
        assert_eq!(brute_force_count(&st), 4);
    }
}
