//! Matrix-trace decomposition of the gauge part of the squared curvature.

use nalgebra::DMatrix;

use super::sm::{GaugeSector, SmGauge};
use crate::field::Point;
use crate::{Error, Result};

/// Number of copies of the `Λ`, `Q` and `V` blocks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multiplicities {
    pub lambda: f64,
    pub q: f64,
    pub v: f64,
}

#[derive(Clone, Debug)]
pub struct TraceOracleReport {
    /// `Tr(F F)` of each sector with only one of `B, W, A` switched on;
    /// rows are `Λ, Q, V`, columns `B·B, Tr W·W, Tr G·G`.
    pub sector_coefficients: [[f64; 3]; 3],
    /// Target coefficients `−¾g1², −¼g2², −¾g3²`.
    pub literal: [f64; 3],
    /// Multiplicities solving `Σ_s m_s coeff_s = literal`.
    pub multiplicities: Multiplicities,
    /// Coefficients of the full `Λ ⊕ Q ⊕ V` block with unit multiplicity.
    pub unit_coefficients: [f64; 3],
    /// Largest `|Σ_s m_s Tr(F_s F_s) − literal·scalars|` on the input field.
    pub residual: f64,
}

fn sector_traces(gauge: &SmGauge, p: &Point, ginv: &DMatrix<f64>) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (k, s) in [GaugeSector::Lambda, GaugeSector::Q, GaugeSector::V].into_iter().enumerate() {
        out[k] = gauge.connection(s).curvature(p)?.trace_square(ginv).re;
    }
    Ok(out)
}

/// Measure how `Tr(Λ·Λ)`, `Tr(Q·Q)` and `Tr(V·V)` decompose into the
/// component scalars at `p`, and solve for the block multiplicities that
/// reproduce `−¾g1² B·B − ¼g2² Tr W·W − ¾g3² Tr G·G`.
pub fn trace_oracle(gauge: &SmGauge, p: &Point, ginv: &DMatrix<f64>) -> Result<TraceOracleReport> {
    let n = gauge.dim();
    let zero = SmGauge::zero(n, gauge.couplings)?;
    let isolated = [
        SmGauge { b: gauge.b.clone(), ..zero.clone() },
        SmGauge { w: gauge.w.clone(), ..zero.clone() },
        SmGauge { g: gauge.g.clone(), ..zero.clone() },
    ];
    let mut coeff = [[0.0; 3]; 3];
    for (k, cfg) in isolated.iter().enumerate() {
        let comps = cfg.components(p)?;
        let scalar = [comps.b_squared(ginv), comps.w_trace(ginv), comps.g_trace(ginv)][k];
        if scalar.abs() < 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "trace oracle needs a nonzero field strength in every factor; factor {k} vanishes"
            )));
        }
        let t = sector_traces(cfg, p, ginv)?;
        for s in 0..3 {
            coeff[s][k] = t[s] / scalar;
        }
    }
    let c = gauge.couplings;
    let literal = [-0.75 * c.g1 * c.g1, -0.25 * c.g2 * c.g2, -0.75 * c.g3 * c.g3];
    let a = DMatrix::from_fn(3, 3, |k, s| coeff[s][k]);
    let m = a
        .clone()
        .lu()
        .solve(&nalgebra::DVector::from_column_slice(&literal))
        .ok_or(Error::SingularMatrix { det: a.determinant(), threshold: 0.0 })?;
    let multiplicities = Multiplicities { lambda: m[0], q: m[1], v: m[2] };
    let unit_coefficients = [0, 1, 2].map(|k| coeff[0][k] + coeff[1][k] + coeff[2][k]);
    let comps = gauge.components(p)?;
    let scalars = [comps.b_squared(ginv), comps.w_trace(ginv), comps.g_trace(ginv)];
    let t = sector_traces(gauge, p, ginv)?;
    let lhs = m[0] * t[0] + m[1] * t[1] + m[2] * t[2];
    let rhs: f64 = (0..3).map(|k| literal[k] * scalars[k]).sum();
    Ok(TraceOracleReport {
        sector_coefficients: coeff,
        literal,
        multiplicities,
        unit_coefficients,
        residual: (lhs - rhs).abs(),
    })
}
