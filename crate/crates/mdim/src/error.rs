use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, parsing, and the analyses built on
/// top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("landmark set is empty")]
    EmptyLandmarkSet,

    #[error("graph is not a tree")]
    NotATree,

    #[error("tree is not a caterpillar")]
    NotACaterpillar,

    #[error("tree is not a lobster")]
    NotALobster,

    #[error("invalid center path: {0}")]
    InvalidCenterPath(String),

    #[error("tree order must be at least 1")]
    ZeroOrder,

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("order {order} exceeds guard {guard}; pass the override to proceed")]
    OrderGuardExceeded { order: usize, guard: usize },

    #[error("component rooted at {root} violates the finiteness condition: {reason}")]
    ConditionViolated { root: usize, reason: String },

    #[error("lobster is predicted to have infinite multiset dimension; nothing to construct")]
    InfinitePrediction,

    #[error("constructed set {set:?} is not m-resolving: vertices {} and {} collide", collision.0, collision.1)]
    ConstructionFailure {
        set: Vec<usize>,
        collision: (usize, usize),
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
