use thiserror::Error;

use crate::graph::EdgeId;

/// Structural violations when building a [`Graph`](crate::graph::Graph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("malformed line: {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("header announces {expected} edges but {found} were read")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("color must be a positive integer")]
    ZeroColor,
    #[error("edge {0} colored twice")]
    DuplicateColor(usize),
    #[error("edge {0} has no color")]
    MissingColor(usize),
}

/// A parse failure, tagged with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least {0} vertices")]
    TooSmall(usize),
    #[error("{0}")]
    TooLarge(String),
    #[error("more than {cap} simple paths starting at vertex {source_vertex}; instance too large for exhaustive verification")]
    PathCapExceeded { source_vertex: usize, cap: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("edge {0} has no color")]
    UncoloredEdge(EdgeId),
    #[error("coloring covers {found} edges but the graph has {expected}")]
    ColoringSize { expected: usize, found: usize },
    #[error("colors must be positive integers")]
    ZeroColor,
    #[error("search budget of {budget} nodes exhausted; result unknown")]
    BudgetExhausted { budget: u64 },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("{0}")]
    Unrealizable(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
