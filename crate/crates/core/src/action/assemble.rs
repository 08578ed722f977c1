//! Truncated spectral action `M4Λ⁴a₀ + M2Λ²a₂ + M0a₄` and derived constants.

use std::f64::consts::PI;

use super::cutoff::{CutoffFunction, Moments};
use super::grid::QuadratureMeta;
use super::heat::{HeatKernelCoefficients, HeatKernelInput, DENSITIES};
use crate::connection::normalized_constants_from;
use crate::geometry::sigma_squared;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ActionTerm {
    pub name: String,
    /// Moment the coefficient is proportional to: `M4`, `M2` or `M0`.
    pub moment: String,
    pub coefficient: f64,
    pub integral: f64,
    pub integral_error: f64,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct ActionReport {
    pub title: String,
    pub terms: Vec<ActionTerm>,
    pub total: f64,
    /// Propagated quadrature error of `total`.
    pub total_error: f64,
    pub constants: Vec<(String, f64)>,
    pub meta: Option<QuadratureMeta>,
    pub notes: Vec<String>,
}

impl ActionReport {
    pub fn term(&self, name: &str) -> Option<&ActionTerm> {
        self.terms.iter().find(|t| t.name == name)
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// Sum of the term values by moment, `(M4, M2, M0)` parts.
    pub fn by_moment(&self) -> (f64, f64, f64) {
        let part = |m: &str| self.terms.iter().filter(|t| t.moment == m).map(|t| t.value).sum();
        (part("M4"), part("M2"), part("M0"))
    }

    /// `|total − Σ terms|`.
    pub fn sum_residual(&self) -> f64 {
        (self.total - self.terms.iter().map(|t| t.value).sum::<f64>()).abs()
    }

    pub(crate) fn push_term(&mut self, name: &str, moment: &str, coefficient: f64, integral: f64, integral_error: f64) {
        self.terms.push(ActionTerm {
            name: name.into(),
            moment: moment.into(),
            coefficient,
            integral,
            integral_error,
            value: coefficient * integral,
        });
    }

    pub(crate) fn finish(&mut self) {
        self.total = self.terms.iter().map(|t| t.value).sum();
        self.total_error = self.terms.iter().map(|t| (t.coefficient * t.integral_error).abs()).sum();
    }
}

/// Every constant as a formula in `{M4, M2, M0, Λ²}`.
pub const MOMENT_TABLE: [(&str, &str); 12] = [
    ("tau0", "M4·Λ⁴/16π²"),
    ("1/2kappa0", "σ²·M0/192π²"),
    ("alpha0", "N·M0/(4N_R²·192π²)"),
    ("c_B", "3g1²·M0/(4N_B²·192π²)"),
    ("c_W", "g2²·M0/(4N_W²·192π²)"),
    ("c_G", "3g3²·M0/(4N_G²·192π²)"),
    ("mu0", "192π²/M0"),
    ("delta0", "(12·M4·Λ⁴ + M0·λ₀)/192π²"),
    ("einstein-hilbert", "M2·Λ²/64π²"),
    ("beta0", "M0/2880π²"),
    ("eta0", "M0/480π²"),
    ("zeta0", "M0/1152π²"),
];

/// Constants shared by the full and Riemannian-limit reports.
pub(crate) fn constants_table(
    cutoff: &CutoffFunction,
    m: &Moments,
    input: &HeatKernelInput,
) -> Result<Vec<(String, f64)>> {
    let l2 = cutoff.lambda2;
    let pi2 = PI * PI;
    let tau0 = m.m4 * l2 * l2 / (16.0 * pi2);
    let f = &input.form;
    let mut out = vec![
        ("M4".to_string(), m.m4),
        ("M2".to_string(), m.m2),
        ("M0".to_string(), m.m0),
        ("Lambda2".to_string(), l2),
        ("tau0".to_string(), tau0),
    ];
    if f.dim() % 2 == 0 {
        let s2 = sigma_squared(f.frame.signature())?;
        let half_inv = s2 * m.m0 / (192.0 * pi2);
        out.push(("sigma2".into(), s2));
        out.push(("1/2kappa0".into(), half_inv));
        if half_inv != 0.0 {
            out.push(("kappa0".into(), 0.5 / half_inv));
        }
    }
    if m.m0 != 0.0 {
        let nc = normalized_constants_from(f.gauge.couplings, f.alpha, f.higgs.c, f.eta(), &input.reparam, m.m0, tau0)?;
        out.extend([
            ("alpha0".to_string(), nc.alpha0),
            ("c_B".to_string(), nc.c_b),
            ("c_W".to_string(), nc.c_w),
            ("c_G".to_string(), nc.c_g),
            ("mu0".to_string(), nc.mu0),
            ("z".to_string(), nc.z),
            ("delta0".to_string(), nc.delta0),
            ("lambda0".to_string(), nc.lambda0),
        ]);
    }
    out.extend([
        ("einstein-hilbert".to_string(), m.m2 * l2 / (64.0 * pi2)),
        ("beta0".to_string(), m.m0 / (2880.0 * pi2)),
        ("eta0".to_string(), m.m0 / (480.0 * pi2)),
        ("zeta0".to_string(), m.m0 / (1152.0 * pi2)),
    ]);
    Ok(out)
}

/// Term-by-term `M4Λ⁴a₀ + M2Λ²a₂ + M0a₄`.
pub fn spectral_action(
    cutoff: &CutoffFunction,
    m: &Moments,
    hk: &HeatKernelCoefficients,
    input: &HeatKernelInput,
) -> Result<ActionReport> {
    let l2 = cutoff.lambda2;
    let k0 = 1.0 / (16.0 * PI * PI);
    let k4 = m.m0 / (192.0 * PI * PI);
    let mut r = ActionReport {
        title: "spectral action".into(),
        terms: Vec::new(),
        total: 0.0,
        total_error: 0.0,
        constants: constants_table(cutoff, m, input)?,
        meta: Some(hk.meta.clone()),
        notes: Vec::new(),
    };
    let int = |name: &str| {
        let i = hk.integrals.iter().find(|i| i.name == name).expect("density present");
        (i.value, i.error)
    };
    let (v, e) = int("volume");
    r.push_term("cosmological", "M4", m.m4 * l2 * l2 * k0, v, e);
    let (v, e) = int("E");
    r.push_term("E", "M2", m.m2 * l2 * k0, v, e);
    let (v, e) = int("E^2");
    r.push_term("E^2", "M0", 6.0 * k4, v, e);
    let (v, e) = int("box E");
    r.push_term("box E", "M0", 2.0 * k4, v, e);
    for name in &DENSITIES[4..] {
        let (v, e) = int(name);
        r.push_term(name, "M0", k4, v, e);
    }
    r.finish();
    r.notes.push("moments: M4 = ∫f(u)u du with Λ⁴a₀, M2 = ∫f(u)du with Λ²a₂, M0 = f(0) with a₄".into());
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalForm {
    pub tau0: f64,
    pub half_kappa_inv: f64,
    pub kappa0: f64,
    pub sigma2: f64,
    /// `∫ℱ²√|γ| / σ²`, the generalized `R̂·R̂` integral.
    pub generalized_rr: f64,
    pub volume: f64,
    /// `τ₀V + (1/2κ₀)∫R̂·R̂ + E-terms`.
    pub compact_total: f64,
    pub full_total: f64,
}

/// `∫(τ₀ + (1/2κ₀)R̂·R̂)√|γ|` with `R̂·R̂ = ℱ²/σ²`.
pub fn universal_action_form(report: &ActionReport, sigma2: f64) -> Result<UniversalForm> {
    if sigma2 == 0.0 || !sigma2.is_finite() {
        return Err(Error::InvalidParameter(format!("σ² must be nonzero, got {sigma2}")));
    }
    let c = |name: &str| {
        report.constant(name).ok_or_else(|| Error::MissingStructure(format!("constant {name} not in report")))
    };
    let (m4, m0, l2) = (c("M4")?, c("M0")?, c("Lambda2")?);
    if m0 == 0.0 {
        return Err(Error::InvalidParameter("M0 = 0 leaves κ₀ undefined".into()));
    }
    let tau0 = m4 * l2 * l2 / (16.0 * PI * PI);
    let half = sigma2 * m0 / (192.0 * PI * PI);
    let volume = report.term("cosmological").map(|t| t.integral).unwrap_or(0.0);
    let f2: f64 = DENSITIES[4..].iter().filter_map(|n| report.term(n)).map(|t| t.integral).sum();
    let e_terms: f64 = ["E", "E^2", "box E"].iter().filter_map(|n| report.term(n)).map(|t| t.value).sum();
    let generalized_rr = f2 / sigma2;
    Ok(UniversalForm {
        tau0,
        half_kappa_inv: half,
        kappa0: 0.5 / half,
        sigma2,
        generalized_rr,
        volume,
        compact_total: tau0 * volume + half * generalized_rr + e_terms,
        full_total: report.total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnificationScale {
    pub lambda2: f64,
    /// `M2Λ²/64π²` at that scale.
    pub einstein_hilbert: f64,
    /// `c⁴/16π`.
    pub target: f64,
}

/// `Λ_E² = 4πc⁴/M2`, the scale at which `M2Λ²/64π² = c⁴/16π`.
pub fn unification_scale(m: &Moments, c: f64) -> Result<UnificationScale> {
    if m.m2 == 0.0 || !m.m2.is_finite() {
        return Err(Error::InvalidParameter(format!("M2 must be nonzero and finite, got {}", m.m2)));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let c4 = c.powi(4);
    let lambda2 = 4.0 * PI * c4 / m.m2;
    Ok(UnificationScale { lambda2, einstein_hilbert: m.m2 * lambda2 / (64.0 * PI * PI), target: c4 / (16.0 * PI) })
}
