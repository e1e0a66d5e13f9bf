use std::path::PathBuf;

use crate::corpus::QualityClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("duplicate normalized title {normalized:?} (from {first:?} and {second:?})")]
    DuplicateTitle {
        normalized: String,
        first: String,
        second: String,
    },

    #[error("unknown quality class {0:?}")]
    UnknownClass(String),

    #[error("unknown semantic group {0:?}")]
    UnknownGroup(String),

    #[error("undersampling target {target} for class {class} exceeds its {available} vectors")]
    TargetTooLarge {
        class: QualityClass,
        target: usize,
        available: usize,
    },

    #[error("class {class} has {available} real vectors; SMOTE with k={k} needs at least {}", k + 1)]
    ClassTooSmallForSmote {
        class: QualityClass,
        available: usize,
        k: usize,
    },

    #[error("class {class} has {available} instances, fewer than the {folds} folds requested")]
    ClassTooSmallForFolds {
        class: QualityClass,
        available: usize,
        folds: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid dataset: {0}")]
    Data(String),

    #[error("model: {0}")]
    Model(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
