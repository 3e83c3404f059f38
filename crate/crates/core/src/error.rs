use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("blowup size for base vertex {0} is zero")]
    ZeroBlowupSize(usize),
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("malformed graph6 header")]
    BadHeader,
    #[error("invalid graph6 byte {0:#04x}")]
    BadByte(u8),
    #[error("graph6 body has {got} bytes, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
