use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8: {0}")]
    Ingest(#[from] std::str::Utf8Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("metric undefined: {0}")]
    Metric(String),

    #[error("training failed: {0}")]
    Train(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("evaluation failed: {0}")]
    Eval(String),

    #[error("topic model error: {0}")]
    Topic(String),

    #[error("cannot analyze: {0}")]
    Analyze(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid analysis: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(source_name: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }
}
