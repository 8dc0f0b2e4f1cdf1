use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("(1-t)^{multiplicity} does not divide the polynomial: remainder {remainder} at division step {step}")]
    Divisibility {
        step: u32,
        multiplicity: u32,
        remainder: Rational,
    },
    #[error("internal consistency failure: exact division left a remainder during elimination")]
    InexactDivision,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation {
        line: Option<usize>,
        message: String,
    },
}

impl GraphError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        GraphError::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(line: Option<usize>, message: impl Into<String>) -> Self {
        GraphError::Validation {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanningError {
    #[error("weighted complexity is zero; resistance distances are undefined")]
    Singular,
    #[error("brute-force enumeration supports at most {max} vertices, got {n}")]
    Size { n: usize, max: usize },
    #[error("all edge weights must be positive for this operation")]
    Positivity,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoveringError {
    #[error("unsupported group `{0}`")]
    UnsupportedGroup(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("line {line}: {message}")]
    Voltage { line: usize, message: String },
    #[error("the derived covering graph is disconnected")]
    DisconnectedCover,
    #[error("the derived graph is not simple: {0}")]
    Simplicity(String),
    #[error("log-derivative undefined: twisted determinant for irrep {irrep} vanishes on the curve")]
    Singular { irrep: usize },
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Top-level error, mapped onto process exit codes by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// 1 identity failure, 2 parse/validation, 3 singular, 4 precondition,
    /// 5 covering construction.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Graph(_) | Error::Io(_) | Error::Usage(_) => 2,
            Error::Spanning(SpanningError::Singular)
            | Error::Verify(VerifyError::Spanning(SpanningError::Singular))
            | Error::Covering(CoveringError::Spanning(SpanningError::Singular))
            | Error::Covering(CoveringError::Singular { .. }) => 3,
            Error::Verify(VerifyError::Algebra(_)) => 1,
            Error::Spanning(_) | Error::Verify(_) => 4,
            Error::Covering(CoveringError::Voltage { .. })
            | Error::Covering(CoveringError::UnsupportedGroup(_)) => 2,
            Error::Covering(CoveringError::Spanning(_)) => 4,
            Error::Covering(_) => 5,
            Error::Algebra(_) => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = Error::from(GraphError::Parse { line: 2, message: "bad".into() });
        assert_eq!(parse.exit_code(), 2);
        assert_eq!(Error::from(SpanningError::Singular).exit_code(), 3);
        assert_eq!(Error::from(VerifyError::Spanning(SpanningError::Singular)).exit_code(), 3);
        assert_eq!(Error::from(VerifyError::Precondition("m < n".into())).exit_code(), 4);
        assert_eq!(Error::from(VerifyError::Algebra(AlgebraError::InexactDivision)).exit_code(), 1);
        assert_eq!(Error::from(CoveringError::DisconnectedCover).exit_code(), 5);
        assert_eq!(Error::from(CoveringError::Simplicity("loop".into())).exit_code(), 5);
        assert_eq!(Error::from(CoveringError::Singular { irrep: 1 }).exit_code(), 3);
        assert_eq!(Error::from(CoveringError::UnsupportedGroup("Q8".into())).exit_code(), 2);
        assert_eq!(Error::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn messages_name_the_line() {
        let e = GraphError::Parse { line: 4, message: "expected 3 fields".into() };
        assert!(e.to_string().contains("line 4"));
    }
}
