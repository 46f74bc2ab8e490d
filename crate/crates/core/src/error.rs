use thiserror::Error;

use crate::template::CellId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by the kolam engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid template size {k}x{l}: both sides must be at least 1")]
    InvalidSize { k: u32, l: u32 },

    #[error("template size {k}x{l} exceeds the maximum side length of {max}")]
    TooLarge { k: u32, l: u32, max: u32 },

    #[error("cell {0} is not part of this template")]
    UnknownCell(CellId),

    #[error("symmetry {op} is not applicable to a {k}x{l} template")]
    InapplicableSymmetry { op: String, k: u32, l: u32 },

    #[error("{edges} shared edges exceeds the brute-force cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },

    #[error("{count} kolams exceeds the cap of {cap}")]
    TooManyKolams { count: String, cap: u64 },

    #[error("multiset has {tiles} tiles but the template has {cells} cells")]
    SizeMismatch { tiles: u64, cells: usize },

    #[error("crossing string has length {found}, expected {expected}")]
    CrossingLength { expected: usize, found: usize },

    #[error("invalid render style: {0}")]
    InvalidStyle(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI and the HTTP service.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSize { .. } => "invalid-size",
            Error::TooLarge { .. } => "too-large",
            Error::UnknownCell(_) => "unknown-cell",
            Error::InapplicableSymmetry { .. } => "inapplicable-symmetry",
            Error::CapExceeded { .. } | Error::TooManyKolams { .. } => "cap-exceeded",
            Error::SizeMismatch { .. } => "size-mismatch",
            Error::CrossingLength { .. } => "crossing-length",
            Error::InvalidStyle(_) => "invalid-style",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
