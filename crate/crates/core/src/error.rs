use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("a walk needs at least one vertex")]
    EmptyWalk,

    #[error("path repeats vertex {0}")]
    RepeatedVertex(usize),

    #[error("a digraph-source sequence needs at least one entry")]
    EmptySequence,

    #[error("vertex {0} does not belong to any digraph of the sequence")]
    NotInUniverse(usize),

    #[error("congestion is undefined for an empty family")]
    EmptyFamily,

    #[error("matroids are defined on different ground sets")]
    GroundSetMismatch,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
