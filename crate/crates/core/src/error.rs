use thiserror::Error;

use crate::chow::{Basis, SurfaceId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class lives on {found} but {expected} was required")]
    SurfaceMismatch { expected: SurfaceId, found: SurfaceId },

    #[error("basis symbol {symbol} is not defined on {surface}")]
    ForeignBasis { symbol: Basis, surface: SurfaceId },

    #[error("invalid chi query (n={n}, a={a}, b={b}): {reason}")]
    InvalidChiQuery { n: i64, a: i64, b: i64, reason: &'static str },

    #[error("row {row}: parameters n={n}, b={b:?} violate `{predicate}`")]
    Inadmissible {
        row: String,
        n: i64,
        b: Option<i64>,
        predicate: String,
    },

    #[error("row {row}: boundary genus map violates {detail}")]
    GenusConstraint { row: String, detail: String },

    #[error("row {row} has {actual} parity, operation requires {required}")]
    WrongParity {
        row: String,
        required: &'static str,
        actual: &'static str,
    },

    #[error("invalid genus {g}: {reason}")]
    InvalidGenus { g: i64, reason: &'static str },

    #[error("invalid sweep parameter n={n}: need n >= 3")]
    InvalidSweep { n: i64 },

    #[error("expression `{source_text}`: {reason}")]
    Expr { source_text: String, reason: String },

    #[error("cannot parse rational from `{0}`")]
    ParseRational(String),

    #[error("internal identity failed: {0}")]
    Internal(String),
}

impl Error {
    /// Catalog row the error refers to, if any.
    pub fn row(&self) -> Option<&str> {
        match self {
            Error::Inadmissible { row, .. }
            | Error::GenusConstraint { row, .. }
            | Error::WrongParity { row, .. } => Some(row),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
