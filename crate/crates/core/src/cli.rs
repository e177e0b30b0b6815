//! Command-line front end. [`run`] does all the work and returns the exit
//! status together with what should go to stdout and stderr, so the binary
//! is a thin wrapper and tests can drive every command in-process.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::admissibility::{check_admissibility, ks_search};
use crate::context::{ContextError, Structure};
use crate::datasets;
use crate::hasse::{emit_dot, HasseError, Scope};
use crate::io::{load_structure_file, parse_state, structure_to_json, LoadError};
use crate::scalar::GaussianRational;
use crate::valuation::{evaluate_structure, Mode, ValuationError};

#[derive(Debug, Parser)]
#[command(
    name = "qlogic",
    version,
    about = "Invariant-subspace lattices and supervaluational truth values"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Invariant,
    Hilbert,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Invariant => Mode::Invariant,
            ModeArg::Hilbert => Mode::HilbertSublattice,
        }
    }
}

#[derive(Debug, Args)]
pub struct Source {
    /// Built-in dataset name (see `datasets list`).
    #[arg(long, conflicts_with = "file")]
    pub dataset: Option<String>,
    /// Structure file.
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Comma-separated scalar literals, e.g. `0,0,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub state: String,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate a structure file.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// List the enumerated invariant-subspace lattices.
    Lattice {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        context: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Truth value of every lattice member in a state.
    Eval {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Check the two admissibility rules per context.
    Admissibility {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate Kochen-Specker assignments.
    KsSearch {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Emit a Hasse diagram in DOT.
    Hasse {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        state: StateArgs,
        /// A context name, or `all`.
        #[arg(long, default_value = "all")]
        scope: String,
        #[command(flatten)]
        out: Output,
    },
    /// Built-in datasets.
    Datasets {
        #[command(subcommand)]
        action: DatasetAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum DatasetAction {
    List,
    Export {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

pub fn load_structure(source: &Source) -> Result<Structure, LoadError> {
    match (&source.dataset, &source.file) {
        (Some(name), _) => datasets::by_name(name).ok_or_else(|| LoadError::Parse {
            line: 0,
            column: 0,
            msg: format!("unknown dataset {name:?}"),
        }),
        (None, Some(path)) => load_structure_file(path),
        (None, None) => unreachable!("checked by source()"),
    }
}

fn source(source: &Source) -> Result<Structure, Failure> {
    if let Some(name) = &source.dataset {
        if datasets::by_name(name).is_none() {
            return Err(Failure::Usage(format!(
                "--dataset: unknown dataset {name:?} (known: {})",
                datasets::NAMES.join(", ")
            )));
        }
    } else if source.file.is_none() {
        return Err(Failure::Usage("expected a structure file or --dataset <name>".into()));
    }
    Ok(load_structure(source)?)
}

fn state(st: &Structure, args: &StateArgs) -> Result<Vec<GaussianRational>, Failure> {
    let v = parse_state(&args.state).map_err(|e| Failure::Usage(format!("--state: {e}")))?;
    st.check_state(&v)
        .map_err(|e| Failure::Usage(format!("--state: {e}")))?;
    Ok(v)
}

fn valuation_failure(e: ValuationError) -> Failure {
    match e {
        ValuationError::State(e @ (ContextError::ZeroState | ContextError::StateLength { .. })) => {
            Failure::Usage(format!("--state: {e}"))
        }
        other => Failure::Invalid(other.to_string()),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn lattice_text(st: &Structure, only: Option<&str>) -> String {
    let mut out = String::new();
    for l in st.lattices() {
        if only.is_some_and(|n| n != l.context_name()) {
            continue;
        }
        out.push_str(&format!("lattice {} ({} members)\n", l.context_name(), l.len()));
        let width = l.members().iter().map(|m| m.label().len()).max().unwrap_or(0);
        for m in l.members() {
            out.push_str(&format!(
                "  {:<width$}  dim {}  {}\n",
                m.label(),
                m.subspace.dim(),
                m.subspace
            ));
        }
    }
    out
}

fn lattice_json(st: &Structure, only: Option<&str>) -> String {
    let lattices: Vec<_> = st
        .lattices()
        .iter()
        .filter(|l| only.is_none_or(|n| n == l.context_name()))
        .map(|l| {
            json!({
                "context": l.context_name(),
                "members": l.members().iter().map(|m| json!({
                    "label": m.label(),
                    "dim": m.subspace.dim(),
                    "basis": m.subspace,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    pretty(&json!({ "dimension": st.ambient_dim(), "lattices": lattices }))
}

/// Returns the rendered output and the file it should go to, if any.
fn dispatch(cmd: &Command) -> Result<(String, Option<PathBuf>), Failure> {
    match cmd {
        Command::Validate { file, out } => {
            let st = load_structure_file(file)?;
            let names: Vec<_> = st.contexts().iter().map(|c| c.name()).collect();
            let text = match out.format {
                Format::Text => format!(
                    "ok: dimension {}, {} contexts ({})\n",
                    st.ambient_dim(),
                    names.len(),
                    names.join(", ")
                ),
                Format::Structured => pretty(&json!({
                    "valid": true,
                    "dimension": st.ambient_dim(),
                    "contexts": names,
                })),
            };
            Ok((text, out.output.clone()))
        }
        Command::Lattice {
            source: src,
            context,
            out,
        } => {
            let st = source(src)?;
            if let Some(name) = context {
                if st.context(name).is_none() {
                    return Err(Failure::Usage(format!("--context: no context named {name:?}")));
                }
            }
            let only = context.as_deref();
            let text = match out.format {
                Format::Text => lattice_text(&st, only),
                Format::Structured => lattice_json(&st, only),
            };
            Ok((text, out.output.clone()))
        }
        Command::Eval {
            source: src,
            state: sa,
            out,
        } => {
            let st = source(src)?;
            let psi = state(&st, sa)?;
            let report = evaluate_structure(&st, &psi, sa.mode.into()).map_err(valuation_failure)?;
            let text = match out.format {
                Format::Text => report.to_text(),
                Format::Structured => pretty(&report),
            };
            Ok((text, out.output.clone()))
        }
        Command::Admissibility {
            source: src,
            state: sa,
            out,
        } => {
            let st = source(src)?;
            let psi = state(&st, sa)?;
            let report = evaluate_structure(&st, &psi, sa.mode.into()).map_err(valuation_failure)?;
            let adm = check_admissibility(&st, &report).map_err(|e| Failure::Invalid(e.to_string()))?;
            let text = match out.format {
                Format::Text => adm.to_text(),
                Format::Structured => pretty(&adm),
            };
            Ok((text, out.output.clone()))
        }
        Command::KsSearch { source: src, out } => {
            let st = source(src)?;
            let found = ks_search(&st);
            let text = match out.format {
                Format::Text => {
                    let mut t = format!("count: {}\n", found.len());
                    for a in &found {
                        t.push_str(&a.to_line());
                        t.push('\n');
                    }
                    t
                }
                Format::Structured => pretty(&json!({
                    "count": found.len(),
                    "assignments": found.iter().map(|a| a.choices.iter().map(|(c, i)| json!({
                        "context": c,
                        "atom": i + 1,
                    })).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })),
            };
            Ok((text, out.output.clone()))
        }
        Command::Hasse {
            source: src,
            state: sa,
            scope,
            out,
        } => {
            let st = source(src)?;
            let psi = state(&st, sa)?;
            let report = evaluate_structure(&st, &psi, sa.mode.into()).map_err(valuation_failure)?;
            let dot = emit_dot(&st, &report, &Scope::parse(scope)).map_err(|e| match e {
                HasseError::UnknownScope(_) => Failure::Usage(format!("--scope: {e}")),
                other => Failure::Invalid(other.to_string()),
            })?;
            Ok((dot, out.output.clone()))
        }
        Command::Datasets { action } => match action {
            DatasetAction::List => Ok((format!("{}\n", datasets::NAMES.join("\n")), None)),
            DatasetAction::Export { name, output } => {
                let st = datasets::by_name(name)
                    .ok_or_else(|| Failure::Usage(format!("datasets export: unknown dataset {name:?}")))?;
                Ok((structure_to_json(&st), output.clone()))
            }
        },
    }
}

/// Parses `args` (including the program name) and runs the command. The
/// output file, if any, is written only after the command succeeded.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: shown,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: shown,
                },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((text, None)) => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => Outcome::default(),
            Err(e) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Invalid(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
