use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("empty input")]
    EmptyInput,
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("line {line}: malformed input {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid graph6: {0}")]
    InvalidGraph6(String),
    #[error("graph is disconnected; split it into components first")]
    Disconnected,
    #[error("support enumeration over {0} vertices is too large")]
    TooLarge(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("vertex {0} is covered twice")]
    Overlap(usize),
    #[error("vertex {0} is not covered by S or any clique")]
    Uncovered(usize),
    #[error("empty clique")]
    EmptyClique,
    #[error("ideals live in different rings ({0} vs {1} vertices)")]
    RingMismatch(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("invalid field spec {0:?}; expected `q` or `fp:<p>`")]
    BadFieldSpec(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element is not in the poset")]
    UnknownElement,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("clique size must be at least 1")]
    EmptyClique,
}

/// Failures of the local cohomology pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("{0} vertices is too many for the monomial oracle (max 32)")]
    OracleTooLarge(usize),
}
