use std::path::PathBuf;

use nigar::{DiagnosticsError, EstimationError, ModelError, ParamError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input file {0} does not exist")]
    MissingFile(PathBuf),
    #[error("no column `{column}` (available: {})", available.join(", "))]
    MissingColumn { column: String, available: Vec<String> },
    #[error("column `{column}` has no usable values after dropping {dropped} rows")]
    EmptyAfterCleaning { column: String, dropped: usize },
    #[error("unparseable dates on {} rows (first: row {} `{}`)", rows.len(), rows[0].0, rows[0].1)]
    UnparseableDate { rows: Vec<(usize, String)> },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Estimation(#[from] EstimationError),
    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
