use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed type token `{token}`: {reason}")]
    TypeSyntax { token: String, reason: String },

    #[error("unknown basic type `{0}`")]
    UnknownBasicType(String),

    #[error("type mismatch: expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: String, found: String },

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("invalid reduction: {0}")]
    InvalidReduction(String),

    #[error("no reduction from `{from}` to `{to}`")]
    NoReduction { from: String, to: String },

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("word `{word}` has {available} sense(s), index {index} is out of range")]
    InvalidSense {
        word: String,
        index: usize,
        available: usize,
    },

    #[error("model mismatch: expected `{expected}`, found `{found}`")]
    ModelMismatch { expected: String, found: String },

    /// A grammar map would have to send one generator to two different words.
    #[error("non-functorial translation: {0}")]
    NonFunctorial(String),

    #[error("matrix is rank deficient (rank {rank} of {size}); the nearest orthogonal matrix is not unique")]
    RankDeficient { rank: usize, size: usize },

    #[error("singular value iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration budget exceeded: {pairs} phrase pairs, cap is {cap}")]
    BudgetExceeded { pairs: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported file format version {0}")]
    UnsupportedFormat(u32),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Whether the error comes from a numerical procedure rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::RankDeficient { .. } | Error::NoConvergence(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
