use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("digit slice [{offset}, {offset}+{count}) exceeds the {len}-digit source")]
    DigitRange {
        offset: usize,
        count: usize,
        len: usize,
    },

    #[error("window width {0} outside 1..=18")]
    InvalidWindow(usize),

    #[error("pattern digit {0} is not a decimal digit")]
    InvalidDigit(u8),

    #[error("position formula needs at least two digits, got {0}")]
    SingleDigitPosition(u64),

    #[error("stimulus {0} outside [0, 1]")]
    StimulusRange(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot fit normalizer on an empty set")]
    EmptyFit,

    #[error("row has {found} values, normalizer expects {expected}")]
    Width { expected: usize, found: usize },

    #[error("class {0} has no training samples")]
    EmptyClass(usize),

    #[error("split leaves no test rows")]
    EmptyTestSet,

    #[error("prediction and truth lengths differ ({predicted} vs {actual})")]
    LengthMismatch { predicted: usize, actual: usize },

    #[error("cannot score an empty prediction list")]
    EmptyScore,

    #[error(transparent)]
    Ingest(#[from] IngestError),
}

/// Dataset ingestion failures, each carrying enough context to find the
/// offending cell.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("{dataset}: row {row}: expected {expected} columns, found {found}")]
    ColumnCount {
        dataset: String,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{dataset}: row {row}, column {column}: missing value")]
    MissingValue {
        dataset: String,
        row: usize,
        column: String,
    },

    #[error("{dataset}: row {row}, column {column}: non-numeric value {value:?}")]
    NonNumeric {
        dataset: String,
        row: usize,
        column: String,
        value: String,
    },

    #[error("{dataset}: row {row}: unknown label {value:?}")]
    UnknownLabel {
        dataset: String,
        row: usize,
        value: String,
    },

    #[error("{dataset}: unknown column {column:?}")]
    UnknownColumn { dataset: String, column: String },

    #[error("{dataset}: expected {expected} {what}, found {found}")]
    Shape {
        dataset: String,
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{dataset}: class {class:?} expected {expected} samples, found {found}")]
    ClassCount {
        dataset: String,
        class: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown dataset id {0:?}")]
    UnknownDataset(String),
}
