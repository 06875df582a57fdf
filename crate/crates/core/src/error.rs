use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse failure class, used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Io,
    Protocol,
    Degenerate,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions {height}x{width}: {reason}")]
    InvalidDimensions {
        height: usize,
        width: usize,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cutpaste rectangle did not fit after {retries} attempts")]
    CutPasteNoFit { retries: usize },

    #[error("degenerate metric input: {0}")]
    Degenerate(String),

    #[error("dataset layout error at {}: {reason}", path.display())]
    Layout { path: PathBuf, reason: String },

    #[error("reconstruction protocol violation: {0}")]
    Protocol(String),

    #[error("malformed float map{}: {reason}", path.as_ref().map(|p| format!(" {}", p.display())).unwrap_or_default())]
    Pfm {
        path: Option<PathBuf>,
        reason: String,
    },

    #[error("cannot decode image {}: {reason}", path.display())]
    Decode { path: PathBuf, reason: String },

    #[error("i/o error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidDimensions { .. }
            | Error::InvalidParameter { .. }
            | Error::CutPasteNoFit { .. }
            | Error::Serde(_) => ErrorKind::Config,
            Error::DimensionMismatch { .. } | Error::Protocol(_) => ErrorKind::Protocol,
            Error::Degenerate(_) => ErrorKind::Degenerate,
            Error::Layout { .. } | Error::Pfm { .. } | Error::Decode { .. } | Error::Io { .. } => {
                ErrorKind::Io
            }
        }
    }
}

pub(crate) fn ensure_same_dims(expected: (usize, usize), found: (usize, usize)) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
