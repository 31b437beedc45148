use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes. A test decision is never an error.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const DATA: i32 = 2;
    pub const NUMERIC: i32 = 3;
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("line {line}: not a finite number: {token:?}")]
    Parse { line: usize, token: String },
    #[error("unknown dataset {0:?} (expected dataset-1 .. dataset-6)")]
    UnknownDataset(String),
    #[error(transparent)]
    Core(#[from] extropy_core::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        use extropy_core::Error as E;
        match self {
            AppError::Usage(_) | AppError::UnknownDataset(_) => exit::USAGE,
            AppError::Read { .. } | AppError::Parse { .. } => exit::DATA,
            AppError::Write { .. } | AppError::Json(_) => exit::DATA,
            AppError::Core(e) if e.is_numeric() => exit::NUMERIC,
            AppError::Core(
                E::ZeroWindow
                | E::InvalidBandwidth(_)
                | E::InvalidParameter { .. }
                | E::InvalidProbability(_)
                | E::InvalidAlpha(_)
                | E::InvalidRecordOrder
                | E::TooFewReplicates { .. }
                | E::UnsupportedPower(_),
            ) => exit::USAGE,
            AppError::Core(_) => exit::DATA,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
