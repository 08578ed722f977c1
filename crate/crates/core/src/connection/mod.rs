//! The generalized covariant derivative: gravity, gauge and Higgs blocks,
//! curvature, and the squared-curvature Lagrangian.

pub mod cdual;
pub mod generators;
mod lagrangian;
mod matrix;
mod oracle;
mod sm;

pub use lagrangian::{
    curvature_squared, curvature_squared_raw, density_at, lambda0, metric_variation, metric_variation_fd,
    normalized_constants, normalized_constants_from, sm_lagrangian_normalized, FieldScalars, LagrangianBreakdown, NormalizedConstants,
    Reparametrization, Term,
};
pub use matrix::{anti_hermitian_from, FieldStrength, GaugeFactor, GaugeTransform, MatrixConnection};
pub use oracle::{trace_oracle, Multiplicities, TraceOracleReport};
pub use sm::{
    higgs_covariant_derivative, higgs_kinetic, quaternion, quaternion_residual, two_form_square, ConnectionForm,
    Couplings, CurvatureForm, GaugeComponents, GaugeSector, HiggsField, SmGauge,
};
