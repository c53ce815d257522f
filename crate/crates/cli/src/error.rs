use std::io;
use std::path::PathBuf;

use binedge_core::{EngineError, GraphError, IdealError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] GraphError),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("input rejected: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("cache {path} is corrupt at line {line}: {reason}")]
    CacheCorrupt { path: PathBuf, line: usize, reason: String },
}

impl CliError {
    /// 2 for bad input, 3 for internal inconsistency, 4 for cache corruption.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Read { .. } | CliError::Write { .. } | CliError::Unsupported(_) => 2,
            CliError::Inconsistent(_) => 3,
            CliError::CacheCorrupt { .. } => 4,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Graph(g) | EngineError::Ideal(IdealError::Graph(g)) => CliError::Parse(g),
            EngineError::OracleTooLarge(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Inconsistent(other.to_string()),
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        CliError::from(EngineError::from(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let io = || io::Error::other("x");
        assert_eq!(CliError::Parse(GraphError::EmptyInput).exit_code(), 2);
        assert_eq!(CliError::Read { path: "a".into(), source: io() }.exit_code(), 2);
        assert_eq!(CliError::Unsupported("big".into()).exit_code(), 2);
        assert_eq!(CliError::Inconsistent("x".into()).exit_code(), 3);
        let corrupt = CliError::CacheCorrupt { path: "c".into(), line: 1, reason: "r".into() };
        assert_eq!(corrupt.exit_code(), 4);
        assert_eq!(CliError::from(EngineError::OracleTooLarge(40)).exit_code(), 2);
        assert_eq!(CliError::from(EngineError::Inconsistent("x".into())).exit_code(), 3);
    }
}
