use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertices {0} and {1} are already adjacent")]
    AdjacentPair(usize, usize),
    #[error("edge-addition would create a loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {}-{} is not present", .0.0, .0.1)]
    MissingEdge(Edge),
    #[error("vertex {vertex} is out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("vertex {vertex} has degree {degree}; splitting needs degree at least 4")]
    DegreeTooLow { vertex: usize, degree: usize },
    #[error("invalid split partition at vertex {0}")]
    BadPartition(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("graph has no minor isomorphic to the target")]
    NoHMinor,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph6 parse error: {0}")]
    Parse(String),
    #[error("level member {0} violates the level precondition")]
    SeedMismatch(String),
    #[error("cached run does not match configuration: {0}")]
    ResumeMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
