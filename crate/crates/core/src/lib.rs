//! Numerical engine for generalized-metric geometrodynamics.
//!
//! Layers, bottom up:
//! - [`tensor`], [`dual`], [`field`]: point tensors, hyper-dual numbers and
//!   differentiable chart fields.
//! - [`geometry`]: vielbeins, the generalized metric, Christoffel symbols,
//!   curvature, Dirac matrices, geodesics.
//! - [`connection`]: the generalized covariant derivative with gravity,
//!   gauge and Higgs blocks, its curvature and squared-curvature Lagrangian.
//! - [`spectral`]: finite spectral triples, inner fluctuations, the
//!   Standard-Model finite Dirac operator.
//! - [`action`]: cutoff moments, heat-kernel coefficients, the truncated
//!   spectral action and field-equation residuals.

pub mod action;
pub mod connection;
pub mod dual;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod spectral;
pub mod tensor;

pub use dual::HyperDual;
pub use field::{ChartField, DerivativeMode, Jet, Point, Signature};
pub use tensor::{Direction, IndexKind, Pairing, Scalar, Slot, Tensor, Variance};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("variance error: {0}")]
    Variance(String),
    #[error("singular matrix: |det| = {det:e} below threshold {threshold:e}")]
    SingularMatrix { det: f64, threshold: f64 },
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("coordinate condition violated: {0}")]
    CoordinateCondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
