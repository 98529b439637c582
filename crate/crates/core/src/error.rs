use thiserror::Error;

/// Errors produced by scenario parsing, encoding and evaluation.
#[derive(Debug, Error)]
pub enum EsecError {
    #[error("geometric query on non-present cube `{id}`")]
    NonPresentCube { id: String },

    #[error("`{symbol}` is not a directional relation")]
    NotDirectional { symbol: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("frame {index}: {message}")]
    Frame { index: usize, message: String },

    #[error("scenario invalid: {0}")]
    Scenario(String),

    #[error("no action detected: no touch/untouch transition in scenario")]
    NoActionDetected,

    #[error("empty relation history")]
    EmptyHistory,

    #[error("matrix has no columns")]
    EmptyMatrix,

    #[error("column index {index} out of range (matrix has {len} columns)")]
    ColumnOutOfRange { index: usize, len: usize },

    #[error("prefix horizon {upto} out of range (matrix has {len} columns)")]
    PrefixOutOfRange { upto: usize, len: usize },

    #[error("training library invalid: {0}")]
    Library(String),

    #[error("evaluation needs {needed} samples per class, `{class}` has {got}")]
    InsufficientSamples {
        class: String,
        needed: usize,
        got: usize,
    },

    #[error("human response file: {0}")]
    Responses(String),

    #[error("information analysis: {0}")]
    Info(String),

    #[error("unknown action class `{0}`")]
    UnknownClass(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EsecError>;
