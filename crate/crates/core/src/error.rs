use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The vertex matrix is numerically singular: the nodes are collinear,
    /// coplanar, or too close to it for double precision.
    #[error("degenerate simplex: |det| = {det:.3e} is below threshold {threshold:.3e}")]
    DegenerateSimplex { det: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    /// A node lies outside the ball the caller requires it to be in.
    #[error("vertex {index} at distance {distance} from the center exceeds radius {radius}")]
    NodesOutsideBall {
        index: usize,
        distance: f64,
        radius: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
