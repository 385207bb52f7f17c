use thiserror::Error;

/// Errors raised by graph construction, evaluation and analysis.
///
/// The display text always starts with the variant name so callers can match on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QbagError {
    #[error("DuplicateArgument: argument `{0}` is listed more than once")]
    DuplicateArgument(String),
    #[error("InvalidArgumentId: `{0}` must be a non-empty token without whitespace or commas")]
    InvalidArgumentId(String),
    #[error("UnknownEndpoint: edge ({0}, {1}) refers to an unlisted argument")]
    UnknownEndpoint(String, String),
    #[error("StrengthOutOfRange: strength {value} of `{id}` is outside [0, 1]")]
    StrengthOutOfRange { id: String, value: f64 },
    #[error("OverlappingRelation: edge ({0}, {1}) is both an attack and a support")]
    OverlappingRelation(String, String),
    #[error("CyclicGraph: the relations contain a cycle among {0:?}")]
    CyclicGraph(Vec<String>),
    #[error("UnknownArgument: `{0}`")]
    UnknownArgument(String),
    #[error("NotDistinct: arguments {0:?} must be pairwise distinct")]
    NotDistinct(Vec<String>),
    #[error("DomainError: aggregate {s} is outside the domain [-{k}, {k}] of the linear influence")]
    DomainError { s: f64, k: f64 },
    #[error("TooLarge: exact Shapley is capped at {cap} arguments but the graph has {n}; use shapley-sampled or raise QBAG_EXACT_CAP")]
    TooLarge { n: usize, cap: usize },
    #[error("UnknownExample: `{0}`")]
    UnknownExample(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, QbagError>;
