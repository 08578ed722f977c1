//! Pointwise field-equation residuals and the finite-difference variation
//! oracle.

use nalgebra::DMatrix;

use crate::connection::{metric_variation, metric_variation_fd, ConnectionForm, Reparametrization};
use crate::field::Point;
use crate::geometry::{raise_all4, GeneralizedMetric};
use crate::linalg;
use crate::{Error, Result};

pub const FROZEN_NOTE: &str =
    "finite-difference oracle varies γ^μν with curvature and field tensors frozen: algebraic part only, ∇∇-terms omitted";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationForm {
    /// `4R_μ^{σρλ}R_{νσρλ} ± ½γ_μν R·R = κ₀T_μν − γ_μν κ₀τ₀`.
    Gravity,
    /// `N_μν − ½γ_μν ℒ = ½T_μν`.
    StandardModel,
}

/// All tensors row-major `n × n`.
#[derive(Clone, Debug)]
pub struct FieldEquationResidual {
    pub form: EquationForm,
    pub n: usize,
    /// Displayed left-hand side (`+½γR·R` in the gravity form).
    pub lhs: Vec<f64>,
    /// Left-hand side consistent with varying the density (`−½γR·R`).
    pub lhs_derived: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual: Vec<f64>,
    pub residual_derived: Vec<f64>,
    /// Symmetric finite differences of the density.
    pub fd: Vec<f64>,
    /// `max |fd − lhs_derived|`.
    pub fd_deviation: f64,
    /// `max |fd − lhs|`.
    pub literal_fd_deviation: f64,
    /// `max |residual_μν − residual_νμ|`.
    pub symmetry_residual: f64,
    pub notes: Vec<String>,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn asymmetry(n: usize, v: &[f64]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            m = m.max((v[i * n + j] - v[j * n + i]).abs());
        }
    }
    m
}

fn check_t(n: usize, t: Option<&[f64]>) -> Result<Vec<f64>> {
    match t {
        None => Ok(vec![0.0; n * n]),
        Some(t) if t.len() == n * n => Ok(t.to_vec()),
        Some(t) => Err(Error::DimensionMismatch { left: t.len(), right: n * n }),
    }
}

/// `R_{abcd}R^{abcd}√|γ|` as a function of `γ^{μν}` with `R_{abcd}` frozen.
fn kretschmann_density(n: usize, lower: &[f64], ginv: &DMatrix<f64>) -> Result<f64> {
    let up = raise_all4(n, lower, ginv);
    let k: f64 = lower.iter().zip(&up).map(|(a, b)| a * b).sum();
    Ok(k / linalg::checked_det(ginv)?.abs().sqrt())
}

/// Gravity form at `p`, with `T` (row-major, lower indices) defaulting to zero.
pub fn gravity_field_equation(
    metric: &GeneralizedMetric,
    p: &Point,
    t: Option<&[f64]>,
    kappa0: f64,
    tau0: f64,
    eps: f64,
) -> Result<FieldEquationResidual> {
    let n = metric.dim();
    let t = check_t(n, t)?;
    let cs = metric.riemann(p)?;
    let g = &cs.metric.g;
    let ginv = &cs.metric.inv;
    let lower = cs.riemann_lower();
    let k = cs.kretschmann();
    // X_μν = R_{μabc} R_ν^{abc}
    let mixed = {
        // raise the last three slots only
        let mut m = lower.clone();
        for slot in 1..4 {
            let mut next = vec![0.0; m.len()];
            for (idx, out) in next.iter_mut().enumerate() {
                let mut digits = [idx / n.pow(3), (idx / n.pow(2)) % n, (idx / n) % n, idx % n];
                let free = digits[slot];
                let mut s = 0.0;
                for a in 0..n {
                    digits[slot] = a;
                    let j = ((digits[0] * n + digits[1]) * n + digits[2]) * n + digits[3];
                    s += ginv[(free, a)] * m[j];
                }
                *out = s;
            }
            m = next;
        }
        m
    };
    let n3 = n.pow(3);
    let mut lhs = vec![0.0; n * n];
    let mut lhs_derived = vec![0.0; n * n];
    let mut rhs = vec![0.0; n * n];
    for mu in 0..n {
        for nu in 0..n {
            let x: f64 = (0..n3).map(|r| lower[mu * n3 + r] * mixed[nu * n3 + r]).sum();
            lhs[mu * n + nu] = 4.0 * x + 0.5 * g[(mu, nu)] * k;
            lhs_derived[mu * n + nu] = 4.0 * x - 0.5 * g[(mu, nu)] * k;
            rhs[mu * n + nu] = kappa0 * t[mu * n + nu] - g[(mu, nu)] * kappa0 * tau0;
        }
    }
    let vol = linalg::checked_det(g)?.abs().sqrt();
    let mut fd = vec![0.0; n * n];
    for mu in 0..n {
        for nu in mu..n {
            let mut e = DMatrix::zeros(n, n);
            e[(mu, nu)] += 0.5;
            e[(nu, mu)] += 0.5;
            let plus = kretschmann_density(n, &lower, &(ginv + &e * eps))?;
            let minus = kretschmann_density(n, &lower, &(ginv - &e * eps))?;
            let d = (plus - minus) / (2.0 * eps) / vol;
            fd[mu * n + nu] = d;
            fd[nu * n + mu] = d;
        }
    }
    Ok(finish(EquationForm::Gravity, n, lhs, lhs_derived, rhs, fd))
}

/// Standard-Model form at `p`: `N_μν − ½γ_μν ℒ` against `½T_μν`.
pub fn sm_field_equation(
    form: &ConnectionForm,
    r: &Reparametrization,
    p: &Point,
    t: Option<&[f64]>,
    eps: f64,
) -> Result<FieldEquationResidual> {
    let n = form.dim();
    let t = check_t(n, t)?;
    let cf = form.curvature(p)?;
    let lhs = metric_variation(&cf, r)?;
    let fd = metric_variation_fd(&cf, r, eps)?;
    let rhs: Vec<f64> = t.iter().map(|v| 0.5 * v).collect();
    Ok(finish(EquationForm::StandardModel, n, lhs.clone(), lhs, rhs, fd))
}

fn finish(
    form: EquationForm,
    n: usize,
    lhs: Vec<f64>,
    lhs_derived: Vec<f64>,
    rhs: Vec<f64>,
    fd: Vec<f64>,
) -> FieldEquationResidual {
    let residual: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let residual_derived: Vec<f64> = lhs_derived.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let mut notes = vec![FROZEN_NOTE.to_string()];
    if form == EquationForm::Gravity {
        notes.push("displayed lhs carries +½γR·R; varying √|γ| gives −½γR·R (lhs_derived)".into());
    }
    FieldEquationResidual {
        form,
        n,
        fd_deviation: max_abs_diff(&fd, &lhs_derived),
        literal_fd_deviation: max_abs_diff(&fd, &lhs),
        symmetry_residual: asymmetry(n, &residual).max(asymmetry(n, &residual_derived)),
        lhs,
        lhs_derived,
        rhs,
        residual,
        residual_derived,
        fd,
        notes,
    }
}

impl FieldEquationResidual {
    pub fn max_residual(&self) -> f64 {
        self.residual.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_residual_derived(&self) -> f64 {
        self.residual_derived.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
