//! JSON structure and projector files.
//!
//! ```json
//! {"dimension": 2,
//!  "contexts": [{"name": "Sigma_z",
//!                "projectors": [{"name": "z+", "matrix": [["1", "0"], ["0", "0"]]},
//!                               {"name": "z-", "matrix": [["0", "0"], ["0", "1"]]}]}]}
//! ```
//!
//! Matrix entries are scalar literals. Atom identity across contexts is by
//! canonical range, never by name.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{validate_context, ContextError, Structure};
use crate::matrix::{ExactMatrix, MatrixError};
use crate::operators::{validate_projector, OperatorError, Projector};
use crate::scalar::GaussianRational;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("context {context}, projector {projector}: {source}")]
    Matrix {
        context: String,
        projector: String,
        source: MatrixError,
    },
    #[error("context {context}: {source}")]
    Operator { context: String, source: OperatorError },
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("declared dimension {declared}, but context {context} acts on C^{actual}")]
    DeclaredDimension {
        declared: usize,
        context: String,
        actual: usize,
    },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl LoadError {
    /// Validation failures, as opposed to unreadable or malformed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            LoadError::Operator { .. } | LoadError::Context(_) | LoadError::DeclaredDimension { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectorFile {
    pub name: String,
    pub matrix: Vec<Vec<GaussianRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub name: String,
    pub projectors: Vec<ProjectorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dimension: usize,
    pub contexts: Vec<ContextFile>,
}

fn parse_err(e: serde_json::Error) -> LoadError {
    LoadError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    }
}

impl ProjectorFile {
    pub fn from_projector(p: &Projector) -> ProjectorFile {
        ProjectorFile {
            name: p.name().to_owned(),
            matrix: p.matrix().to_rows(),
        }
    }

    pub fn to_projector(&self, context: &str) -> Result<Projector, LoadError> {
        let m = ExactMatrix::from_rows(self.matrix.clone()).map_err(|source| LoadError::Matrix {
            context: context.to_owned(),
            projector: self.name.clone(),
            source,
        })?;
        validate_projector(self.name.clone(), m).map_err(|source| LoadError::Operator {
            context: context.to_owned(),
            source,
        })
    }
}

impl StructureFile {
    pub fn from_structure(st: &Structure) -> StructureFile {
        StructureFile {
            dimension: st.ambient_dim(),
            contexts: st
                .contexts()
                .iter()
                .map(|c| ContextFile {
                    name: c.name().to_owned(),
                    projectors: c.atoms().iter().map(ProjectorFile::from_projector).collect(),
                })
                .collect(),
        }
    }

    pub fn to_structure(&self) -> Result<Structure, LoadError> {
        let mut contexts = Vec::with_capacity(self.contexts.len());
        for c in &self.contexts {
            let projectors = c
                .projectors
                .iter()
                .map(|p| p.to_projector(&c.name))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(p) = projectors.iter().find(|p| p.dim() != self.dimension) {
                return Err(LoadError::DeclaredDimension {
                    declared: self.dimension,
                    context: c.name.clone(),
                    actual: p.dim(),
                });
            }
            contexts.push(validate_context(c.name.clone(), projectors)?);
        }
        Ok(Structure::new(contexts)?)
    }
}

pub fn parse_structure(text: &str) -> Result<Structure, LoadError> {
    serde_json::from_str::<StructureFile>(text)
        .map_err(parse_err)?
        .to_structure()
}

pub fn parse_projector(text: &str) -> Result<Projector, LoadError> {
    serde_json::from_str::<ProjectorFile>(text)
        .map_err(parse_err)?
        .to_projector("-")
}

pub fn structure_to_json(st: &Structure) -> String {
    let mut s = serde_json::to_string_pretty(&StructureFile::from_structure(st)).expect("serializable");
    s.push('\n');
    s
}

pub fn load_structure_file(path: &std::path::Path) -> Result<Structure, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_structure(&text)
}

/// Comma-separated scalar literals, e.g. `"1,0"` or `"1/2, i"`.
pub fn parse_state(text: &str) -> Result<Vec<GaussianRational>, crate::ScalarError> {
    text.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    #[test]
    fn builtins_round_trip_through_json() {
        for name in datasets::NAMES {
            let st = datasets::by_name(name).unwrap();
            let back = parse_structure(&structure_to_json(&st)).unwrap();
            assert_eq!(back, st);
        }
    }

    #[test]
    fn incomplete_sum_names_context() {
        let text = r#"{"dimension": 3, "contexts": [{"name": "C", "projectors": [
            {"name": "a", "matrix": [["1","0","0"],["0","0","0"],["0","0","0"]]},
            {"name": "b", "matrix": [["0","0","0"],["0","1","0"],["0","0","0"]]}]}]}"#;
        match parse_structure(text) {
            Err(LoadError::Context(ContextError::IncompleteSum { context })) => assert_eq!(context, "C"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_structure("{\"dimension\": 2,\n \"contexts\": [}").unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 2, .. }), "{err}");
        let err = parse_structure(
            r#"{"dimension": 2, "contexts": [{"name": "C", "projectors": [{"name": "a", "matrix": [["1/0"]]}]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
        assert!(!err.is_validation());
    }

    #[test]
    fn bad_projector_is_a_validation_error() {
        let text = r#"{"dimension": 2, "contexts": [{"name": "C", "projectors": [
            {"name": "a", "matrix": [["1","1"],["0","0"]]},
            {"name": "b", "matrix": [["0","0"],["0","1"]]}]}]}"#;
        let err = parse_structure(text).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("not Hermitian"));
    }

    #[test]
    fn declared_dimension_checked() {
        let text = r#"{"dimension": 3, "contexts": [{"name": "C", "projectors": [
            {"name": "a", "matrix": [["1","0"],["0","0"]]},
            {"name": "b", "matrix": [["0","0"],["0","1"]]}]}]}"#;
        assert!(matches!(
            parse_structure(text),
            Err(LoadError::DeclaredDimension {
                declared: 3,
                actual: 2,
                ..
            })
        ));
    }

    #[test]
    fn projector_file() {
        let p = parse_projector(r#"{"name": "y+", "matrix": [["1/2", "-1/2i"], ["1/2i", "1/2"]]}"#).unwrap();
        assert_eq!(p.rank(), 1);
        let back = serde_json::to_string(&ProjectorFile::from_projector(&p)).unwrap();
        assert_eq!(back, r#"{"name":"y+","matrix":[["1/2","-1/2i"],["1/2i","1/2"]]}"#);
    }

    #[test]
    fn states() {
        assert_eq!(parse_state("1,0").unwrap(), vec![1.into(), 0.into()]);
        assert_eq!(parse_state(" 1/2 , i").unwrap()[1], GaussianRational::i());
        assert!(parse_state("1,,0").is_err());
    }
}
