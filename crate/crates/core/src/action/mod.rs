//! Cutoff moments, heat-kernel coefficients, the truncated spectral action,
//! field-equation residuals and the Riemannian limit.

mod assemble;
mod cutoff;
mod fieldeq;
mod grid;
mod heat;
mod limit;
pub mod quadrature;

pub use cutoff::{moments, CutoffFunction, Moments, Profile};
pub use grid::{integrate_box, BoxIntegral, QuadratureMeta, Region};
pub use heat::{heat_kernel_coefficients, Endomorphism, HeatKernelCoefficients, HeatKernelInput, NamedIntegral, DENSITIES};
pub use assemble::{
    spectral_action, unification_scale, universal_action_form, ActionReport, ActionTerm, UnificationScale, UniversalForm,
    MOMENT_TABLE,
};
pub use fieldeq::{gravity_field_equation, sm_field_equation, EquationForm, FieldEquationResidual, FROZEN_NOTE};
pub use limit::{
    box_scalar_curvature, limit_identities, riemannian_limit_action, LimitIdentities, RiemannianLimitReport,
    LIMIT_METRIC_TOL,
};
