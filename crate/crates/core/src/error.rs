//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by graph construction, parsing and the verification
/// machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("graph order must be at least 1")]
    EmptyGraph,

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<usize>),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("beta = {beta} out of range: {reason}")]
    BetaRange { beta: String, reason: String },

    #[error("beta*n is not an integer (beta = {beta}, n = {n})")]
    NonIntegralBetaN { beta: String, n: usize },

    #[error("the family G(n,beta) is undefined: n = {n} and (1-beta)n = {delta} are both odd")]
    FamilyUndefined { n: usize, delta: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("minimum degree {min_degree} is below the required (1-beta)n = {required}")]
    MinDegree { min_degree: usize, required: String },

    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),

    #[error("search refused: {reason} (search space on the order of {estimate} graphs)")]
    SearchRefused { reason: String, estimate: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a free-form domain violation.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
