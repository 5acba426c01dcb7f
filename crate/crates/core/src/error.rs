use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps [`Error::Io`] to exit code 3 and every other variant to
/// exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("deleting every vertex would leave the empty graph")]
    EmptyGraph,

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("{operation} is limited to order {limit}, got {order}")]
    Capability {
        operation: &'static str,
        limit: usize,
        order: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("no real root: {0}")]
    Root(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("partition is not equitable for the {0} matrix")]
    NotEquitable(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
