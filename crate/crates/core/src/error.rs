use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph input (edge list or JSON).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A vertex id outside `0..n`.
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexRange { vertex: usize, n: usize },

    /// A parameter outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Rigidity in dimension `d` needs at least `d + 1` vertices.
    #[error("graph on {n} vertices is too small for dimension {d}")]
    Dimension { n: usize, d: usize },

    /// An operation was asked to run past its documented size cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A precondition that the caller promised does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `absorb_clique` found a vertex with `d` neighbours in the clique that
    /// is not adjacent to all of it; the input graph cannot be d-closed.
    #[error(
        "closure violation: vertex {vertex} has {deg_into} neighbours in the clique \
         but is not adjacent to vertex {missing}"
    )]
    ClosureViolation {
        vertex: usize,
        deg_into: usize,
        missing: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
