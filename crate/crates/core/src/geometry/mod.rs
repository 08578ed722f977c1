//! Frames, metrics, curvature, Dirac matrices and geodesics.

pub mod builtins;
mod curvature;
mod dirac;
mod geodesic;
mod metric;
mod vielbein;

pub use curvature::{ChristoffelSymbols, CurvatureTensors};
pub(crate) use curvature::raise_all4;
pub use dirac::{clifford_basis, dirac_matrices, sigma_matrices, sigma_squared, spinor_generators, DiracMatrices};
pub use geodesic::{geodesic_integrate, geodesic_refined, geodesic_step, GeodesicState, Trajectory};
pub use metric::{GeneralizedMetric, MetricPoint, VolumeElement, VolumeMode};
pub use vielbein::{
    compatibility_residual, frame_curvature, metric_from_vielbein, riemann_from_frame, spin_connection,
    spin_connection_field, tetrad_residual, transport_frame, vielbein_from_metric, FramePoint, FrameTransport,
    SpinConnection, Vielbein,
};
