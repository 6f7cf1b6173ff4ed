use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("edge list parse error: {0}")]
    EdgeList(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex index {index} out of range (n = {n})")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("{0} is not an edge of the base graph")]
    NotABaseEdge(String),
    #[error("graph is not subcubic: vertex {vertex} has degree {degree}")]
    NotSubcubic { vertex: usize, degree: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not outerplanar ({minor} minor, branch sets {branch_sets:?})")]
    NotOuterplanar { minor: String, branch_sets: Vec<Vec<usize>> },
    #[error("class hint {hint} inconsistent with detected structure")]
    InconsistentHint { hint: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coloring length {coloring} does not match vertex count {graph}")]
    SizeMismatch { coloring: usize, graph: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
