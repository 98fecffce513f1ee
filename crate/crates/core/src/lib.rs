//! Exact-arithmetic engine for polyhedral hypersurfaces (bend loci of convex
//! PL functions), their generic complete intersections, and homological
//! connectivity verification at desk scale.
//!
//! Everything combinatorial and topological runs over arbitrary-precision
//! rationals; only the Morse critical-point search uses floating point, and
//! its conclusions are re-expressed exactly before any topology is computed.

pub mod linalg;
pub mod lp;
pub mod polyhedron;

pub use linalg::{IntMatrix, RatMatrix, RatVector, Rational, SmithNormalForm};
pub use lp::{LpOutcome, LpSense, LpStatus};
pub use polyhedron::{AffineForm, Hyperplane, Polyhedron};

/// Errors shared across the engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty polyhedron")]
    EmptyPolyhedron,
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires bounded cells; cell {0} is unbounded")]
    UnboundedCell(usize),
    #[error("truncation box too small: 0-cell coordinate reaches {coord}, box bound is {bound}")]
    BoxTooSmall { coord: String, bound: String },
    #[error("complex is not a truncation (no boundary markers recorded)")]
    NotTruncated,
    #[error("selected cells do not form a face-closed subcomplex (cell {0})")]
    NotSubcomplex(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("Newton iteration diverged on cell {cell} after {seeds} seeds")]
    NewtonDivergence { cell: usize, seeds: usize },
    #[error("degenerate gradient at critical point on cell {0}")]
    DegenerateGradient(usize),
    #[error("genericity rejection limit exceeded after {0} redraws")]
    RejectionLimitExceeded(usize),
    #[error("unsupported ambient dimension {0} (command requires d = 2)")]
    UnsupportedDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
