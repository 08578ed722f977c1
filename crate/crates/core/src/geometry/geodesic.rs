use super::metric::GeneralizedMetric;
use crate::field::Point;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicState {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub tau: f64,
}

impl GeodesicState {
    pub fn new(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if x.len() != v.len() {
            return Err(Error::DimensionMismatch { left: x.len(), right: v.len() });
        }
        if x.iter().chain(&v).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("geodesic initial data".into()));
        }
        Ok(Self { x, v, tau: 0.0 })
    }
}

/// Integrated states. On failure `states` holds everything up to the last
/// good step and `failure` the cause.
#[derive(Debug)]
pub struct Trajectory {
    pub states: Vec<GeodesicState>,
    pub failure: Option<Error>,
}

impl Trajectory {
    pub fn last(&self) -> &GeodesicState {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn into_result(self) -> Result<Vec<GeodesicState>> {
        match self.failure {
            Some(e) => Err(e),
            None => Ok(self.states),
        }
    }

    /// `γ_μν ẋ^μ ẋ^ν` along the trajectory.
    pub fn norms(&self, g: &GeneralizedMetric) -> Result<Vec<f64>> {
        self.states.iter().map(|s| Ok(g.at(&Point::new(s.x.clone())?)?.inner(&s.v, &s.v))).collect()
    }

    /// Largest `|γ(ẋ,ẋ)(τ) − γ(ẋ,ẋ)(0)|`.
    pub fn norm_drift(&self, g: &GeneralizedMetric) -> Result<f64> {
        let norms = self.norms(g)?;
        let n0 = norms[0];
        Ok(norms.iter().fold(0.0f64, |m, v| m.max((v - n0).abs())))
    }
}

/// `ẍ^μ = −Γ^μ_{αβ} ẋ^α ẋ^β`.
fn acceleration(g: &GeneralizedMetric, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let gam = g.christoffel(&Point::new(x.to_vec())?)?;
    let n = x.len();
    let mut a = vec![0.0; n];
    for (m, am) in a.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += gam.get(m, i, j) * v[i] * v[j];
            }
        }
        *am = -s;
    }
    Ok(a)
}

fn axpy(y: &[f64], h: f64, d: &[f64]) -> Vec<f64> {
    y.iter().zip(d).map(|(a, b)| a + h * b).collect()
}

/// One classical RK4 step of the geodesic equation.
pub fn geodesic_step(g: &GeneralizedMetric, s: &GeodesicState, dtau: f64) -> Result<GeodesicState> {
    if s.x.len() != g.dim() {
        return Err(Error::DimensionMismatch { left: s.x.len(), right: g.dim() });
    }
    let h = dtau;
    let k1x = s.v.clone();
    let k1v = acceleration(g, &s.x, &s.v)?;
    let x2 = axpy(&s.x, 0.5 * h, &k1x);
    let k2x = axpy(&s.v, 0.5 * h, &k1v);
    let k2v = acceleration(g, &x2, &k2x)?;
    let x3 = axpy(&s.x, 0.5 * h, &k2x);
    let k3x = axpy(&s.v, 0.5 * h, &k2v);
    let k3v = acceleration(g, &x3, &k3x)?;
    let x4 = axpy(&s.x, h, &k3x);
    let k4x = axpy(&s.v, h, &k3v);
    let k4v = acceleration(g, &x4, &k4x)?;
    let n = s.x.len();
    let mut x = s.x.clone();
    let mut v = s.v.clone();
    for i in 0..n {
        x[i] += h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
        v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    if x.iter().chain(&v).any(|c| !c.is_finite()) {
        return Err(Error::NonFinite(format!("geodesic state at τ = {}", s.tau + h)));
    }
    Ok(GeodesicState { x, v, tau: s.tau + h })
}

pub fn geodesic_integrate(g: &GeneralizedMetric, s0: &GeodesicState, dtau: f64, steps: usize) -> Trajectory {
    let mut states = Vec::with_capacity(steps + 1);
    states.push(s0.clone());
    for _ in 0..steps {
        match geodesic_step(g, states.last().unwrap(), dtau) {
            Ok(s) => states.push(s),
            Err(e) => return Trajectory { states, failure: Some(e) },
        }
    }
    Trajectory { states, failure: None }
}

/// Integrate over `[0, tau_total]`, doubling the step count from `initial_steps`
/// until the endpoint moves by less than `tol`. Returns the final trajectory
/// and the endpoint change of the last doubling.
pub fn geodesic_refined(
    g: &GeneralizedMetric,
    s0: &GeodesicState,
    tau_total: f64,
    initial_steps: usize,
    tol: f64,
    max_doublings: usize,
) -> Result<(Trajectory, f64)> {
    let mut steps = initial_steps.max(1);
    let mut prev = geodesic_integrate(g, s0, tau_total / steps as f64, steps);
    if let Some(e) = prev.failure {
        return Err(e);
    }
    let mut change = f64::INFINITY;
    for _ in 0..max_doublings {
        steps *= 2;
        let next = geodesic_integrate(g, s0, tau_total / steps as f64, steps);
        if let Some(e) = next.failure {
            return Err(e);
        }
        let (a, b) = (prev.last(), next.last());
        change = a.x.iter().zip(&b.x).chain(a.v.iter().zip(&b.v)).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
        prev = next;
        if change < tol {
            break;
        }
    }
    Ok((prev, change))
}
