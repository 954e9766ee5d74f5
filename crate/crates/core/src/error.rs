use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate profile owner `{0}`")]
    DuplicateOwner(String),

    #[error("lexicon {0} is empty")]
    EmptyLexicon(PathBuf),

    #[error("corpus has no fully sampled profiles")]
    EmptyCorpus,

    #[error("no word has a centrality score above {threshold}")]
    EmptySelection { threshold: f64 },

    #[error("eigenvector centrality did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("word `{0}` is not a node of the word graph")]
    UnknownWord(String),

    #[error("no profile mentions `{0}`")]
    NoMatchingProfile(String),

    #[error("graph has no edges")]
    NoEdges,

    #[error("no node has a positive in-degree")]
    NoPositiveInDegree,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("unknown seed `{0}`")]
    UnknownSeed(String),

    #[error("seed `{0}` has no liked questions")]
    UnlikedSeed(String),

    #[error("label file `{0}` shares no ids with the corpus")]
    NoLabeledUsers(String),

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

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
