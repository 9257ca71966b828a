use std::fmt;

use crate::field::ArithError;

/// Crate-level error type for the solver pipeline.
#[derive(Clone, Debug)]
pub enum Error {
    Arith(ArithError),
    DimensionMismatch { context: &'static str },
    /// Leading columns are not independent up to the rank, so no Hermite
    /// form without column operations exists.
    NotEchelonCompatible,
    /// Preconditioning failed to produce a nice matrix within the retry
    /// budget.
    RetriesExhausted { attempts: u32 },
    /// A denominator of the input is not guaranteed nonzero by the
    /// constraint set N.
    IllPosed { denominator: String },
    NonSquare { rows: usize, cols: usize },
    Parse { pos: usize, msg: String },
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Arith(e) => write!(f, "{e}"),
            Error::DimensionMismatch { context } => write!(f, "dimension mismatch in {context}"),
            Error::NotEchelonCompatible => {
                write!(f, "leading columns not independent up to the rank")
            }
            Error::RetriesExhausted { attempts } => {
                write!(f, "no nice preconditioning found after {attempts} attempts")
            }
            Error::IllPosed { denominator } => {
                write!(f, "ill-posed problem: denominator {denominator} not in N")
            }
            Error::NonSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<ArithError> for Error {
    fn from(e: ArithError) -> Self {
        Error::Arith(e)
    }
}
