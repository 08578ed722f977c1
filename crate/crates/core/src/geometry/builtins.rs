//! Reference geometries with both a direct metric formula and a frame.

use nalgebra::DMatrix;

use super::metric::GeneralizedMetric;
use super::vielbein::Vielbein;
use crate::dual::HyperDual;
use crate::field::Signature;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct BuiltinGeometry {
    pub name: String,
    pub coordinates: Vec<String>,
    /// Metric written out directly, independent of the frame.
    pub metric: GeneralizedMetric,
    pub vielbein: Vielbein,
}

fn diag(n: usize, d: Vec<HyperDual>) -> Vec<HyperDual> {
    let mut out = vec![HyperDual::ZERO; n * n];
    for (i, v) in d.into_iter().enumerate() {
        out[i * n + i] = v;
    }
    out
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn flat(signature: Signature) -> Result<BuiltinGeometry> {
    let n = signature.dim();
    let eta = signature.signs().to_vec();
    let metric = GeneralizedMetric::from_fn(n, move |_| diag(n, eta.iter().map(|&s| HyperDual::constant(s)).collect()))?;
    let vielbein = Vielbein::constant(&DMatrix::identity(n, n), signature)?;
    Ok(BuiltinGeometry { name: "flat".into(), coordinates: (0..n).map(|i| format!("x{i}")).collect(), metric, vielbein })
}

/// Flat plane in polar coordinates `(r, θ)`.
pub fn polar() -> Result<BuiltinGeometry> {
    let metric = GeneralizedMetric::from_fn(2, |x| diag(2, vec![HyperDual::ONE, x[0] * x[0]]))?;
    let vielbein = Vielbein::from_fn(Signature::euclidean(2), |x| diag(2, vec![HyperDual::ONE, x[0]]))?;
    Ok(BuiltinGeometry { name: "polar".into(), coordinates: names(&["r", "theta"]), metric, vielbein })
}

/// Round 2-sphere of radius `r` in `(θ, φ)`.
pub fn sphere2(r: f64) -> Result<BuiltinGeometry> {
    positive("sphere radius", r)?;
    let metric = GeneralizedMetric::from_fn(2, move |x| {
        let s = x[0].sin() * r;
        diag(2, vec![HyperDual::constant(r * r), s * s])
    })?;
    let vielbein = Vielbein::from_fn(Signature::euclidean(2), move |x| {
        diag(2, vec![HyperDual::constant(r), x[0].sin() * r])
    })?;
    Ok(BuiltinGeometry { name: "sphere2".into(), coordinates: names(&["theta", "phi"]), metric, vielbein })
}

/// Unit 2-sphere in `(u, φ)` with `u = −cos θ`, where `det γ = 1` and
/// `Γ^β_{βα} = 0`.
pub fn sphere2_unimodular() -> Result<BuiltinGeometry> {
    let metric = GeneralizedMetric::from_fn(2, |x| {
        let w = 1.0 - x[0] * x[0];
        diag(2, vec![w.recip(), w])
    })?;
    let vielbein = Vielbein::from_fn(Signature::euclidean(2), |x| {
        let w = (1.0 - x[0] * x[0]).sqrt();
        diag(2, vec![w.recip(), w])
    })?;
    Ok(BuiltinGeometry { name: "sphere2-unimodular".into(), coordinates: names(&["u", "phi"]), metric, vielbein })
}

/// Flat space in linear coordinates `y = A⁻¹x`; `γ = Aᵀ η A`.
pub fn skewed_flat(a: &DMatrix<f64>, signature: Signature) -> Result<BuiltinGeometry> {
    let n = signature.dim();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch { left: a.nrows(), right: n });
    }
    let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(signature.signs()));
    let g = a.transpose() * eta * a;
    let gv: Vec<HyperDual> = (0..n * n).map(|k| HyperDual::constant(g[(k / n, k % n)])).collect();
    let metric = GeneralizedMetric::from_fn(n, move |_| gv.clone())?;
    let vielbein = Vielbein::constant(a, signature)?;
    Ok(BuiltinGeometry { name: "skewed-flat".into(), coordinates: (0..n).map(|i| format!("y{i}")).collect(), metric, vielbein })
}

/// Schwarzschild exterior in `(t, r, θ, φ)`, signature `(−,+,+,+)`.
pub fn schwarzschild(m: f64) -> Result<BuiltinGeometry> {
    positive("mass", m)?;
    let metric = GeneralizedMetric::from_fn(4, move |x| {
        let f = 1.0 - 2.0 * m / x[1];
        let r2 = x[1] * x[1];
        let s = x[2].sin();
        diag(4, vec![-f, f.recip(), r2, r2 * s * s])
    })?;
    let vielbein = Vielbein::from_fn(Signature::lorentzian(4), move |x| {
        let f = (1.0 - 2.0 * m / x[1]).sqrt();
        diag(4, vec![f, f.recip(), x[1], x[1] * x[2].sin()])
    })?;
    Ok(BuiltinGeometry { name: "schwarzschild".into(), coordinates: names(&["t", "r", "theta", "phi"]), metric, vielbein })
}

/// `S²(r) × ℝ²` in `(θ, φ, x, y)`.
pub fn sphere2_times_flat(r: f64) -> Result<BuiltinGeometry> {
    positive("sphere radius", r)?;
    let metric = GeneralizedMetric::from_fn(4, move |x| {
        let s = x[0].sin() * r;
        diag(4, vec![HyperDual::constant(r * r), s * s, HyperDual::ONE, HyperDual::ONE])
    })?;
    let vielbein = Vielbein::from_fn(Signature::euclidean(4), move |x| {
        diag(4, vec![HyperDual::constant(r), x[0].sin() * r, HyperDual::ONE, HyperDual::ONE])
    })?;
    Ok(BuiltinGeometry { name: "sphere2xflat".into(), coordinates: names(&["theta", "phi", "x", "y"]), metric, vielbein })
}

fn positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {v}")))
    }
}
