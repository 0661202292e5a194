use std::fmt;
use std::path::Path;

use alg_core::classes::{ClassError, GeneratorError};
use alg_core::congruence::CongruenceError;
use alg_core::deduction::DeductionError;
use alg_core::formula::{ParseError, SchemeError};
use alg_core::glivenko::GlivenkoError;
use alg_core::principles::PrincipleError;
use alg_core::search::SearchError;

use crate::format::FormatError;

/// Everything that ends a run with exit status 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Format { path: String, line: usize, message: String },
    Io { path: String, message: String },
    Cap(String),
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    pub fn format(path: &Path, e: FormatError) -> CliError {
        CliError::Format { path: path.display().to_string(), line: e.line, message: e.message }
    }

    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Format { path, line, message } => write!(f, "malformed file {path}, line {line}: {message}"),
            CliError::Io { path, message } => write!(f, "cannot read or write {path}: {message}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn congruence_cap(e: &CongruenceError) -> bool {
    matches!(e, CongruenceError::CapExceeded { .. })
}

fn deduction_cap(e: &DeductionError) -> bool {
    matches!(e, DeductionError::Congruence(c) if congruence_cap(c))
}

fn classify(cap: bool, text: String) -> CliError {
    if cap {
        CliError::Cap(text)
    } else {
        CliError::Failed(text)
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        classify(congruence_cap(&e), e.to_string())
    }
}

impl From<DeductionError> for CliError {
    fn from(e: DeductionError) -> Self {
        classify(deduction_cap(&e), e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        classify(matches!(e, SearchError::CapExceeded { .. }), e.to_string())
    }
}

impl From<PrincipleError> for CliError {
    fn from(e: PrincipleError) -> Self {
        let cap = match &e {
            PrincipleError::Deduction(d) => deduction_cap(d),
            PrincipleError::Congruence(c) => congruence_cap(c),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}

impl From<GlivenkoError> for CliError {
    fn from(e: GlivenkoError) -> Self {
        let cap = match &e {
            GlivenkoError::Deduction(d) => deduction_cap(d),
            GlivenkoError::Search(s) => matches!(s, SearchError::CapExceeded { .. }),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ClassError> for CliError {
    fn from(e: ClassError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(format!("formula {e}"))
    }
}

impl From<alg_core::algebra::AlgebraError> for CliError {
    fn from(e: alg_core::algebra::AlgebraError) -> Self {
        CliError::Failed(e.to_string())
    }
}
