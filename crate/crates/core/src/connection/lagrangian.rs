//! Squared-curvature Lagrangian, its normalized Standard-Model form and its
//! algebraic metric variation.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::sm::{higgs_kinetic, Couplings, CurvatureForm};
use crate::linalg;
use crate::{Error, Result};

/// Reparametrization constants `N_R, N_B, N_W, N_G, N_H` and the spinor
/// multiplicity `N` of the gravity term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reparametrization {
    pub n_r: f64,
    pub n_b: f64,
    pub n_w: f64,
    pub n_g: f64,
    pub n_h: f64,
    pub n_spin: f64,
}

impl Default for Reparametrization {
    fn default() -> Self {
        Self { n_r: 1.0, n_b: 1.0, n_w: 1.0, n_g: 1.0, n_h: 1.0, n_spin: 4.0 }
    }
}

impl Reparametrization {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("N_R", self.n_r),
            ("N_B", self.n_b),
            ("N_W", self.n_w),
            ("N_G", self.n_g),
            ("N_H", self.n_h),
            ("N", self.n_spin),
        ] {
            if v == 0.0 || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("reparametrization constant {name} = {v}")));
            }
        }
        Ok(())
    }

    /// `N_B, N_W, N_G` making the gauge coefficients of the normalized
    /// Lagrangian exactly `1/4`.
    pub fn canonical_gauge(f0: f64, g1: f64, g2: f64, g3: f64) -> (f64, f64, f64) {
        let k = f0 / (64.0 * PI * PI);
        ((k * g1 * g1).sqrt(), (k * g2 * g2 / 3.0).sqrt(), (k * g3 * g3).sqrt())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub name: String,
    pub coefficient: f64,
    pub scalar: f64,
    pub value: f64,
}

impl Term {
    fn new(name: &str, coefficient: f64, scalar: f64) -> Self {
        Self { name: name.into(), coefficient, scalar, value: coefficient * scalar }
    }
}

#[derive(Clone, Debug)]
pub struct LagrangianBreakdown {
    pub terms: Vec<Term>,
    pub total: f64,
    pub constants: Vec<(String, f64)>,
}

impl LagrangianBreakdown {
    fn from_terms(terms: Vec<Term>, constants: Vec<(String, f64)>) -> Self {
        let total = terms.iter().map(|t| t.value).sum();
        Self { terms, total, constants }
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.name == name)
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Field scalars entering the Lagrangian, contracted with `ginv`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldScalars {
    /// `R^{ab}_μν R_ab^μν`.
    pub curvature: f64,
    /// `B_μν B^μν`.
    pub b: f64,
    /// `Tr(W_μν W^μν)`, Pauli-matrix trace.
    pub w: f64,
    /// `Tr(G_μν G^μν)`, Gell-Mann trace.
    pub g: f64,
    /// `γ^μν ½ Re Tr(D_μH† D_νH)`.
    pub higgs_kinetic: f64,
    /// `(|H|² − c²)²`.
    pub potential: f64,
}

impl CurvatureForm {
    pub fn scalars(&self, ginv: &DMatrix<f64>) -> FieldScalars {
        let c = &self.components;
        let v = self.higgs_norm_squared - self.c * self.c;
        FieldScalars {
            curvature: self.curvature_square(ginv),
            b: c.b_squared(ginv),
            w: c.w_trace(ginv),
            g: c.g_trace(ginv),
            higgs_kinetic: higgs_kinetic(&self.higgs_kinetic, ginv),
            potential: v * v,
        }
    }
}

/// `λ₀`: the shift that makes the reparametrized Lagrangian equal `ℱ²` at
/// the vacuum `H = 0` with all curvatures zero.
pub fn lambda0(eta: f64, alpha: f64, c: f64, n_h: f64) -> f64 {
    eta * eta * c.powi(4) / alpha.powi(4) * (1.0 + n_h.powi(-4))
}

fn reparam_terms(f: &CurvatureForm, r: &Reparametrization, s: &FieldScalars) -> Vec<Term> {
    let (g1, g2, g3) = (f.couplings.g1, f.couplings.g2, f.couplings.g3);
    let a2 = f.alpha * f.alpha;
    vec![
        Term::new("curvature", r.n_spin / (4.0 * r.n_r * r.n_r), s.curvature),
        Term::new("hypercharge", -3.0 * g1 * g1 / (4.0 * r.n_b * r.n_b), s.b),
        Term::new("weak", -g2 * g2 / (4.0 * r.n_w * r.n_w), s.w),
        Term::new("gluon", -3.0 * g3 * g3 / (4.0 * r.n_g * r.n_g), s.g),
        Term::new("higgs-kinetic", f.eta / (a2 * r.n_h * r.n_h), s.higgs_kinetic),
        Term::new("higgs-potential", -f.eta * f.eta / (a2 * a2 * r.n_h.powi(4)), s.potential),
        Term::new("constant", lambda0(f.eta, f.alpha, f.c, r.n_h), 1.0),
    ]
}

/// Reparametrized squared curvature, term by term.
pub fn curvature_squared(f: &CurvatureForm, r: &Reparametrization) -> Result<LagrangianBreakdown> {
    r.validate()?;
    let s = f.scalars(&f.metric_inv);
    Ok(LagrangianBreakdown::from_terms(
        reparam_terms(f, r, &s),
        vec![("lambda0".into(), lambda0(f.eta, f.alpha, f.c, r.n_h)), ("eta".into(), f.eta)],
    ))
}

/// `ℱ²` before reparametrization:
/// `(N/4) R·R − ¾g1²B·B − ¼g2²W·W − ¾g3²G·G + (η/α²)|DH|² + (η²/α⁴)(|H|²−c²)²`.
pub fn curvature_squared_raw(f: &CurvatureForm, n_spin: f64) -> LagrangianBreakdown {
    let s = f.scalars(&f.metric_inv);
    let (g1, g2, g3) = (f.couplings.g1, f.couplings.g2, f.couplings.g3);
    let a2 = f.alpha * f.alpha;
    LagrangianBreakdown::from_terms(
        vec![
            Term::new("curvature", n_spin / 4.0, s.curvature),
            Term::new("hypercharge", -0.75 * g1 * g1, s.b),
            Term::new("weak", -0.25 * g2 * g2, s.w),
            Term::new("gluon", -0.75 * g3 * g3, s.g),
            Term::new("higgs-kinetic", f.eta / a2, s.higgs_kinetic),
            Term::new("higgs-potential", f.eta * f.eta / (a2 * a2), s.potential),
        ],
        vec![],
    )
}

/// Constants of the normalized form
/// `α₀R·R − c_B B² − c_W W² − c_G G² + |D𝐇|² − μ₀(|𝐇|² − z²)² + δ₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedConstants {
    pub alpha0: f64,
    pub c_b: f64,
    pub c_w: f64,
    pub c_g: f64,
    /// `𝐇 = s H`.
    pub higgs_scale: f64,
    pub z: f64,
    pub mu0: f64,
    pub delta0: f64,
    pub lambda0: f64,
}

/// `f0` is the moment multiplying `a₄`; `cosmological` is `M4 Λ⁴ / 16π²`.
pub fn normalized_constants(
    f: &CurvatureForm,
    r: &Reparametrization,
    f0: f64,
    cosmological: f64,
) -> Result<NormalizedConstants> {
    normalized_constants_from(f.couplings, f.alpha, f.c, f.eta, r, f0, cosmological)
}

/// [`normalized_constants`] from the constant parameters alone.
pub fn normalized_constants_from(
    couplings: Couplings,
    alpha: f64,
    c: f64,
    eta: f64,
    r: &Reparametrization,
    f0: f64,
    cosmological: f64,
) -> Result<NormalizedConstants> {
    r.validate()?;
    if f0 == 0.0 || !f0.is_finite() {
        return Err(Error::InvalidParameter(format!("f0 must be nonzero, got {f0}")));
    }
    let k = f0 / (192.0 * PI * PI);
    let Couplings { g1, g2, g3 } = couplings;
    let scale2 = k * eta / (alpha * alpha * r.n_h * r.n_h);
    if scale2 < 0.0 {
        return Err(Error::InvalidParameter("Higgs rescaling needs η f0 > 0".into()));
    }
    let s = scale2.sqrt();
    let l0 = lambda0(eta, alpha, c, r.n_h);
    Ok(NormalizedConstants {
        alpha0: k * r.n_spin / (4.0 * r.n_r * r.n_r),
        c_b: k * 3.0 * g1 * g1 / (4.0 * r.n_b * r.n_b),
        c_w: k * g2 * g2 / (4.0 * r.n_w * r.n_w),
        c_g: k * 3.0 * g3 * g3 / (4.0 * r.n_g * r.n_g),
        higgs_scale: s,
        z: s * c,
        mu0: 1.0 / k,
        delta0: cosmological + k * l0,
        lambda0: l0,
    })
}

pub fn sm_lagrangian_normalized(
    f: &CurvatureForm,
    r: &Reparametrization,
    f0: f64,
    cosmological: f64,
) -> Result<LagrangianBreakdown> {
    let nc = normalized_constants(f, r, f0, cosmological)?;
    let s = f.scalars(&f.metric_inv);
    let s2 = nc.higgs_scale * nc.higgs_scale;
    let hb = s2 * f.higgs_norm_squared - nc.z * nc.z;
    Ok(LagrangianBreakdown::from_terms(
        vec![
            Term::new("curvature", nc.alpha0, s.curvature),
            Term::new("hypercharge", -nc.c_b, s.b),
            Term::new("weak", -nc.c_w, s.w),
            Term::new("gluon", -nc.c_g, s.g),
            Term::new("higgs-kinetic", 1.0, s2 * s.higgs_kinetic),
            Term::new("higgs-potential", -nc.mu0, hb * hb),
            Term::new("delta0", nc.delta0, 1.0),
        ],
        vec![
            ("alpha0".into(), nc.alpha0),
            ("c_B".into(), nc.c_b),
            ("c_W".into(), nc.c_w),
            ("c_G".into(), nc.c_g),
            ("mu0".into(), nc.mu0),
            ("z".into(), nc.z),
            ("delta0".into(), nc.delta0),
            ("lambda0".into(), nc.lambda0),
        ],
    ))
}

/// `2 F_{ρβ} F_{σδ} γ^{βδ}`: derivative of `F·F` with respect to `γ^{ρσ}`.
fn two_form_variation(n: usize, f: &[f64], ginv: &DMatrix<f64>, out: &mut [f64], weight: f64) {
    for r in 0..n {
        for s in 0..n {
            let mut acc = 0.0;
            for b in 0..n {
                for d in 0..n {
                    acc += f[r * n + b] * f[s * n + d] * ginv[(b, d)];
                }
            }
            out[r * n + s] += 2.0 * weight * acc;
        }
    }
}

/// Algebraic variation `(1/√|γ|) δ(ℒ√|γ|)/δγ^{μν}` holding the frame
/// curvature `R^{ab}_μν`, the gauge two-forms and `D_μH` fixed:
/// `N_μν − ½ γ_μν ℒ`, returned row-major.
pub fn metric_variation(f: &CurvatureForm, r: &Reparametrization) -> Result<Vec<f64>> {
    let b = curvature_squared(f, r)?;
    let n = f.n;
    let ginv = &f.metric_inv;
    let coef = |name: &str| b.term(name).map(|t| t.coefficient).unwrap_or(0.0);
    let mut out = vec![0.0; n * n];
    let (kw, kg) = (2.0 * coef("weak"), 2.0 * coef("gluon"));
    for a in 0..n {
        for bb in 0..n {
            let base = (a * n + bb) * n * n;
            let w = coef("curvature") * f.frame_signs[a] * f.frame_signs[bb];
            two_form_variation(n, &f.frame_curvature[base..base + n * n], ginv, &mut out, w);
        }
    }
    let c = &f.components;
    two_form_variation(n, &c.b, ginv, &mut out, coef("hypercharge"));
    for w in &c.w {
        two_form_variation(n, w, ginv, &mut out, kw);
    }
    for g in &c.g {
        two_form_variation(n, g, ginv, &mut out, kg);
    }
    let kh = coef("higgs-kinetic");
    for mu in 0..n {
        for nu in 0..n {
            let h = 0.25
                * (linalg::trace(&(linalg::dagger(&f.higgs_kinetic[mu]) * &f.higgs_kinetic[nu])).re
                    + linalg::trace(&(linalg::dagger(&f.higgs_kinetic[nu]) * &f.higgs_kinetic[mu])).re);
            out[mu * n + nu] += kh * h;
        }
    }
    for mu in 0..n {
        for nu in 0..n {
            out[mu * n + nu] -= 0.5 * f.metric[(mu, nu)] * b.total;
        }
    }
    Ok(out)
}

/// `ℒ√|γ|` as a function of the inverse metric, all field tensors frozen.
pub fn density_at(f: &CurvatureForm, r: &Reparametrization, ginv: &DMatrix<f64>) -> Result<f64> {
    let s = f.scalars(ginv);
    let l: f64 = reparam_terms(f, r, &s).iter().map(|t| t.value).sum();
    let det = linalg::checked_det(ginv)?;
    Ok(l / det.abs().sqrt())
}

/// Symmetric finite differences of `ℒ√|γ|` under `γ^{μν} → γ^{μν} + ε e_(μν)`,
/// divided by `√|γ|`.
pub fn metric_variation_fd(f: &CurvatureForm, r: &Reparametrization, eps: f64) -> Result<Vec<f64>> {
    r.validate()?;
    let n = f.n;
    let vol = linalg::checked_det(&f.metric)?.abs().sqrt();
    let mut out = vec![0.0; n * n];
    for mu in 0..n {
        for nu in mu..n {
            let mut e = DMatrix::zeros(n, n);
            e[(mu, nu)] += 0.5;
            e[(nu, mu)] += 0.5;
            let plus = density_at(f, r, &(&f.metric_inv + &e * eps))?;
            let minus = density_at(f, r, &(&f.metric_inv - &e * eps))?;
            let d = (plus - minus) / (2.0 * eps) / vol;
            out[mu * n + nu] = d;
            out[nu * n + mu] = d;
        }
    }
    Ok(out)
}
