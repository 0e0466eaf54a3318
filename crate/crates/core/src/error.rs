use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertices {u} and {v} are not adjacent")]
    NotAnEdge { u: usize, v: usize },

    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("size limit exceeded: {what} is {got}, limit {limit}")]
    SizeLimitExceeded { what: &'static str, got: usize, limit: usize },

    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("no closed form for family `{0}`")]
    UnsupportedFamily(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("pattern has {0} vertices, at most 12 are supported")]
    PatternTooLarge(usize),

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}
