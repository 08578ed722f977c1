//! Riemannian limit `𝒟_Λ = ∇ + 𝒟`: Einstein–Hilbert, quadratic-curvature
//! and Standard-Model terms.

use std::f64::consts::PI;

use super::assemble::{constants_table, ActionReport};
use super::cutoff::{CutoffFunction, Moments};
use super::grid::{integrate_box, Region};
use super::heat::{HeatKernelInput, DENSITIES};
use crate::field::Point;
use crate::geometry::{metric_from_vielbein, riemann_from_frame, GeneralizedMetric};
use crate::{Error, Result};

/// Tolerance on `|γ − g|` above which the frame is rejected.
pub const LIMIT_METRIC_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitIdentities {
    pub points: usize,
    /// `max |γ_μν − g_μν|`.
    pub metric_deviation: f64,
    /// `max |R̂^ρ_μνλ − R^ρ_μνλ|`.
    pub riemann_deviation: f64,
}

#[derive(Clone, Debug)]
pub struct RiemannianLimitReport {
    pub action: ActionReport,
    pub identities: LimitIdentities,
}

const LIMIT_DENSITIES: [&str; 5] = ["R", "R^2", "Ric^2", "Riem^2", "box R"];

/// `□S = γ^μν(∂_μ∂_νS − Γ^λ_μν ∂_λS)` for the scalar curvature, with
/// derivatives of `S` by central differences of step `h`.
pub fn box_scalar_curvature(g: &GeneralizedMetric, p: &Point, h: f64) -> Result<f64> {
    let n = g.dim();
    let s = |q: &Point| -> Result<f64> { Ok(g.riemann(q)?.scalar) };
    let s0 = s(p)?;
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n * n];
    for m in 0..n {
        let sp = s(&p.shifted(m, h))?;
        let sm = s(&p.shifted(m, -h))?;
        d1[m] = (sp - sm) / (2.0 * h);
        d2[m * n + m] = (sp - 2.0 * s0 + sm) / (h * h);
        for v in m + 1..n {
            let pp = s(&p.shifted(m, h).shifted(v, h))?;
            let pm = s(&p.shifted(m, h).shifted(v, -h))?;
            let mp = s(&p.shifted(m, -h).shifted(v, h))?;
            let mm = s(&p.shifted(m, -h).shifted(v, -h))?;
            let d = (pp - pm - mp + mm) / (4.0 * h * h);
            d2[m * n + v] = d;
            d2[v * n + m] = d;
        }
    }
    let gam = g.christoffel(p)?;
    let inv = g.at(p)?.inv;
    let mut out = 0.0;
    for m in 0..n {
        for v in 0..n {
            let mut t = d2[m * n + v];
            for l in 0..n {
                t -= gam.get(l, m, v) * d1[l];
            }
            out += inv[(m, v)] * t;
        }
    }
    Ok(out)
}

/// `max |γ − g|` and `max |R̂ − R|` at `3ⁿ` interior points of the region.
pub fn limit_identities(g: &GeneralizedMetric, input: &HeatKernelInput, region: &Region) -> Result<LimitIdentities> {
    let n = g.dim();
    let frame = &input.form.frame;
    let gamma = metric_from_vielbein(frame)?;
    let total = 3usize.pow(n as u32);
    let mut metric_deviation: f64 = 0.0;
    let mut riemann_deviation: f64 = 0.0;
    for k in 0..total {
        let mut rest = k;
        let x: Vec<f64> = (0..n)
            .map(|a| {
                let i = rest % 3;
                rest /= 3;
                region.lower[a] + (i as f64 + 0.5) / 3.0 * (region.upper[a] - region.lower[a])
            })
            .collect();
        let p = Point::new(x)?;
        let (mg, mgam) = (g.at(&p)?, gamma.at(&p)?);
        metric_deviation = metric_deviation.max((&mg.g - &mgam.g).abs().max());
        let rg = g.riemann(&p)?;
        let rf = riemann_from_frame(frame, &p)?;
        riemann_deviation = riemann_deviation.max(rg.riemann.iter().zip(&rf).fold(0.0, |m, (a, b)| m.max((a - b).abs())));
    }
    Ok(LimitIdentities { points: total, metric_deviation, riemann_deviation })
}

/// The expanded action on `region`, with the frame of `input` required to
/// be a frame of `g`.
pub fn riemannian_limit_action(
    g: &GeneralizedMetric,
    input: &HeatKernelInput,
    cutoff: &CutoffFunction,
    m: &Moments,
    region: &Region,
    grid: usize,
) -> Result<RiemannianLimitReport> {
    let n = g.dim();
    if input.dim() != n || region.dim() != n {
        return Err(Error::DimensionMismatch { left: input.dim().max(region.dim()), right: n });
    }
    let identities = limit_identities(g, input, region)?;
    if identities.metric_deviation > LIMIT_METRIC_TOL {
        return Err(Error::InvalidParameter(format!(
            "frame metric differs from g by {:e}: spin connection is not the Riemannian one of g",
            identities.metric_deviation
        )));
    }
    let width = 1 + LIMIT_DENSITIES.len() + DENSITIES.len() - 4;
    let bi = integrate_box(region, grid, width, |p| {
        let cs = g.riemann(p)?;
        let vol = cs.metric.det.abs().sqrt();
        let h = 1e-3 * p.coords().iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let mut out = vec![1.0, cs.scalar, cs.scalar * cs.scalar, cs.ricci_squared(), cs.kretschmann()];
        out.push(box_scalar_curvature(g, p, h)?);
        let dens = input.densities(p)?;
        let vol_input = dens[0];
        out.extend(dens[4..].iter().map(|d| d / vol_input));
        Ok(out.into_iter().map(|v| v * vol).collect())
    })?;
    let constants = constants_table(cutoff, m, input)?;
    let c = |name: &str| constants.iter().find(|(k, _)| k == name).map(|(_, v)| *v).unwrap_or(0.0);
    let (eh, eta0, zeta0, beta0) = (c("einstein-hilbert"), c("eta0"), c("zeta0"), c("beta0"));
    let l2 = cutoff.lambda2;
    let k4 = m.m0 / (192.0 * PI * PI);
    let mut report = ActionReport {
        title: "Riemannian-limit action".into(),
        terms: Vec::new(),
        total: 0.0,
        total_error: 0.0,
        constants,
        meta: Some(bi.meta.clone()),
        notes: vec![
            "γ = g and R̂ = R checked at interior sample points".into(),
            "box R is a total derivative; it integrates to ≈ 0 only for periodic or closed sampling".into(),
            "box R uses central differences of the scalar curvature (step 1e-3)".into(),
        ],
    };
    let (v, e) = (&bi.values, &bi.errors);
    report.push_term("cosmological", "M4", m.m4 * l2 * l2 / (16.0 * PI * PI), v[0], e[0]);
    report.push_term("einstein-hilbert", "M2", eh, v[1], e[1]);
    for (i, name) in DENSITIES[4..].iter().enumerate() {
        report.push_term(name, "M0", k4, v[6 + i], e[6 + i]);
    }
    report.push_term("box R", "M0", eta0, v[5], e[5]);
    report.push_term("R^2", "M0", zeta0, v[2], e[2]);
    report.push_term("Ric^2", "M0", -beta0, v[3], e[3]);
    report.push_term("Riem^2", "M0", -beta0, v[4], e[4]);
    report.finish();
    Ok(RiemannianLimitReport { action: report, identities })
}
