use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("node index {index} out of range for graph with {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("edge ({i}, {j}) has non-positive weight {weight}")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },
    #[error("duplicate undirected edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("attribute table does not match schema: {0}")]
    SchemaMismatch(String),
    #[error("invalid attribute schema: {0}")]
    InvalidSchema(String),
    #[error("value {value:?} of categorical column {column:?} is outside the shared domain")]
    UnknownCategoricalValue { column: String, value: String },

    #[error("required file {0} is missing")]
    MissingRequiredFile(PathBuf),
    #[error("{file}:{line_no}: malformed line: {reason}")]
    MalformedLine {
        file: PathBuf,
        line_no: usize,
        reason: String,
    },
    #[error("inconsistent node count: {0}")]
    InconsistentNodeCount(String),
    #[error("edge ({i}, {j}) spans graphs {gi} and {gj}")]
    CrossGraphEdge { i: usize, j: usize, gi: usize, gj: usize },
    #[error("{file}:{line_no}: negative edge weight {weight}")]
    NegativeWeight { file: PathBuf, line_no: usize, weight: f64 },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("Lanczos start vector is zero")]
    ZeroStartVector,
    #[error("tridiagonal eigensolver did not converge within {0} sweeps")]
    EigensolverFailure(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dense oracle refuses n = {n} (cap {cap})")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("configuration selects no features")]
    EmptyFeatureSet,
    #[error("attribute pair ({0}, {1}) is invalid for this schema")]
    InvalidPair(usize, usize),
    #[error("feature column {column} ({label}) is not finite")]
    NonFiniteFeature { column: usize, label: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
