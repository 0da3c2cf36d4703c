use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M*| = {deviation:e} exceeds {allowed:e}")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} is below -{slack:e}")]
    NotPsd { eigenvalue: f64, slack: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coefficient labels do not match the frame labels")]
    LabelMismatch,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("system is not tight: {0}")]
    NotTight(String),

    #[error("{size} labels exceed the search limit of {max}")]
    TooLarge { size: usize, max: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("depth exceeded: {0}")]
    DepthExceeded(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported format {found:?} (expected {expected:?})")]
    UnknownFormat {
        found: String,
        expected: &'static str,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
