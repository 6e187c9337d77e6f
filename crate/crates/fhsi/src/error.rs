use std::path::PathBuf;

/// Errors produced by the fhsi library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image has no pixels")]
    EmptyImage,

    #[error("palette has no entries")]
    EmptyPalette,

    #[error("corpus has no palettes")]
    EmptyCorpus,

    #[error("{attribute} value {value} outside domain [{min}, {max}]")]
    OutOfDomain {
        attribute: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid {attribute} term index {index} (partition has {count} terms)")]
    InvalidTerm {
        attribute: &'static str,
        index: usize,
        count: usize,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("checkpoint line {line}: {message}")]
    Checkpoint { line: usize, message: String },

    #[error("report line {line}: {message}")]
    Report { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
