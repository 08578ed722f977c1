//! Cutoff functions and their moments.

use std::f64::consts::PI;

use super::quadrature::{integrate, integrate_half_line};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `e^{−u}`.
    Exponential,
    /// Indicator of `[0, 1]`.
    Sharp,
    /// `e^{−u²}`.
    Gaussian,
    /// `(1 + u)^{−p}`; moments exist for `p > 2`.
    Rational(f64),
    /// Piecewise linear through `(u_k, f_k)`, zero beyond the last node.
    Tabulated { u: Vec<f64>, f: Vec<f64> },
}

/// Cutoff profile `f` together with the energy scale `Λ_E²`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffFunction {
    pub profile: Profile,
    pub lambda2: f64,
}

/// `M4 = ∫ f(u) u du` (with `Λ⁴a₀`), `M2 = ∫ f(u) du` (with `Λ²a₂`),
/// `M0 = f(0)` (with `a₄`).
#[derive(Clone, Debug, PartialEq)]
pub struct Moments {
    pub m4: f64,
    pub m2: f64,
    pub m0: f64,
    /// `(−1)ⁿ f⁽ⁿ⁾(0)` for `n = 1, 2` when known in closed form.
    pub higher: Vec<f64>,
    /// Largest relative error estimate of the two integrals.
    pub rel_error: f64,
}

const ABS_TOL: f64 = 1e-14;
const REL_TOL: f64 = 1e-12;
const MAX_INTERVALS: usize = 4000;

impl Profile {
    pub fn validate(&self) -> Result<()> {
        match self {
            Profile::Rational(p) if !(*p > 2.0) => Err(Error::Quadrature(format!(
                "divergent tail: ∫u(1+u)^(-{p}) du does not converge (need p > 2)"
            ))),
            Profile::Tabulated { u, f } => {
                if u.len() != f.len() || u.len() < 2 {
                    return Err(Error::InvalidParameter("tabulated cutoff needs ≥ 2 matching nodes".into()));
                }
                if u[0] != 0.0 || u.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::InvalidParameter("tabulated nodes must start at 0 and increase".into()));
                }
                if f.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
                    return Err(Error::InvalidParameter("cutoff values must be finite and ≥ 0".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        match self {
            Profile::Exponential => (-u).exp(),
            Profile::Sharp => {
                if (0.0..=1.0).contains(&u) {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::Gaussian => (-u * u).exp(),
            Profile::Rational(p) => (1.0 + u).powf(-p),
            Profile::Tabulated { u: nodes, f } => {
                if u < 0.0 || u > *nodes.last().unwrap_or(&0.0) {
                    return 0.0;
                }
                let k = nodes.partition_point(|x| *x <= u).clamp(1, nodes.len() - 1);
                let (u0, u1) = (nodes[k - 1], nodes[k]);
                let t = (u - u0) / (u1 - u0);
                f[k - 1] + t * (f[k] - f[k - 1])
            }
        }
    }

    fn higher(&self) -> Vec<f64> {
        match self {
            Profile::Exponential => vec![1.0, 1.0],
            Profile::Gaussian => vec![0.0, -2.0],
            Profile::Rational(p) => vec![*p, p * (p + 1.0)],
            _ => Vec::new(),
        }
    }

    /// Closed-form `(M4, M2)` where available.
    pub fn exact_moments(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Exponential => Some((1.0, 1.0)),
            Profile::Sharp => Some((0.5, 1.0)),
            Profile::Gaussian => Some((0.5, PI.sqrt() / 2.0)),
            Profile::Rational(p) if *p > 2.0 => Some((1.0 / ((p - 1.0) * (p - 2.0)), 1.0 / (p - 1.0))),
            _ => None,
        }
    }
}

impl CutoffFunction {
    pub fn new(profile: Profile, lambda2: f64) -> Result<Self> {
        profile.validate()?;
        if !(lambda2 > 0.0 && lambda2.is_finite()) {
            return Err(Error::InvalidParameter(format!("Λ_E² must be positive, got {lambda2}")));
        }
        Ok(Self { profile, lambda2 })
    }
}

/// Moments by adaptive Gauss–Kronrod quadrature.
pub fn moments(profile: &Profile) -> Result<Moments> {
    profile.validate()?;
    let f = |u: f64| profile.value(u);
    let fu = |u: f64| u * profile.value(u);
    let (i4, i2) = match profile {
        Profile::Sharp => (
            integrate(&fu, 0.0, 1.0, ABS_TOL, REL_TOL, MAX_INTERVALS)?,
            integrate(&f, 0.0, 1.0, ABS_TOL, REL_TOL, MAX_INTERVALS)?,
        ),
        Profile::Tabulated { u, .. } => {
            // exact on each linear piece; sum segment by segment
            let mut a4 = super::quadrature::QuadResult { value: 0.0, error: 0.0, intervals: 0 };
            let mut a2 = a4;
            for w in u.windows(2) {
                let r4 = integrate(&fu, w[0], w[1], ABS_TOL, REL_TOL, MAX_INTERVALS)?;
                let r2 = integrate(&f, w[0], w[1], ABS_TOL, REL_TOL, MAX_INTERVALS)?;
                a4.value += r4.value;
                a4.error += r4.error;
                a4.intervals += r4.intervals;
                a2.value += r2.value;
                a2.error += r2.error;
                a2.intervals += r2.intervals;
            }
            (a4, a2)
        }
        _ => (
            integrate_half_line(&fu, ABS_TOL, REL_TOL, MAX_INTERVALS)?,
            integrate_half_line(&f, ABS_TOL, REL_TOL, MAX_INTERVALS)?,
        ),
    };
    let rel = |r: &super::quadrature::QuadResult| if r.value != 0.0 { r.error / r.value.abs() } else { r.error };
    Ok(Moments {
        m4: i4.value,
        m2: i2.value,
        m0: profile.value(0.0),
        higher: profile.higher(),
        rel_error: rel(&i4).max(rel(&i2)),
    })
}
