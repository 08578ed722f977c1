//! Seeley–DeWitt coefficients `a₀, a₂, a₄` over a coordinate box.

use std::f64::consts::PI;

use super::grid::{integrate_box, QuadratureMeta, Region};
use crate::connection::{curvature_squared, ConnectionForm, Couplings, HiggsField, Reparametrization, SmGauge};
use crate::field::{ChartField, Point};
use crate::geometry::{metric_from_vielbein, GeneralizedMetric, Vielbein};
use crate::linalg;
use crate::{Error, Result};

/// The `E` term of `P = −(𝒟² + E)`.
#[derive(Clone, Debug)]
pub enum Endomorphism {
    Zero,
    Constant(f64),
    /// Scalar field (shape `[1]`); `𝒟²E` is its Laplace–Beltrami image.
    Field(ChartField),
}

#[derive(Clone, Debug)]
pub struct HeatKernelInput {
    pub form: ConnectionForm,
    pub reparam: Reparametrization,
    pub e: Endomorphism,
    metric: GeneralizedMetric,
}

/// Names of the integrated densities, in order.
pub const DENSITIES: [&str; 11] = [
    "volume",
    "E",
    "E^2",
    "box E",
    "curvature",
    "hypercharge",
    "weak",
    "gluon",
    "higgs-kinetic",
    "higgs-potential",
    "constant",
];

#[derive(Clone, Debug, PartialEq)]
pub struct NamedIntegral {
    pub name: String,
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatKernelCoefficients {
    pub a0: f64,
    pub a2: f64,
    pub a4: f64,
    /// Richardson estimates for `a₀, a₂, a₄`.
    pub errors: [f64; 3],
    /// `∫ density √|γ|` for each entry of [`DENSITIES`].
    pub integrals: Vec<NamedIntegral>,
    pub meta: QuadratureMeta,
}

impl HeatKernelCoefficients {
    pub fn integral(&self, name: &str) -> Option<f64> {
        self.integrals.iter().find(|i| i.name == name).map(|i| i.value)
    }
}

impl HeatKernelInput {
    pub fn new(form: ConnectionForm, reparam: Reparametrization, e: Endomorphism) -> Result<Self> {
        reparam.validate()?;
        if let Endomorphism::Field(f) = &e {
            if f.len() != 1 || f.dim() != form.dim() {
                return Err(Error::Shape(format!(
                    "E must be a scalar field on the {}-dimensional chart",
                    form.dim()
                )));
            }
        }
        if let Endomorphism::Constant(v) = e {
            if !v.is_finite() {
                return Err(Error::NonFinite("constant E".into()));
            }
        }
        let metric = metric_from_vielbein(&form.frame)?;
        Ok(Self { form, reparam, e, metric })
    }

    /// Frame only: no gauge fields, `H = 0`, `c = 0`.
    pub fn vacuum(frame: Vielbein, e: Endomorphism) -> Result<Self> {
        let n = frame.dim();
        let couplings = Couplings { g1: 1.0, g2: 1.0, g3: 1.0 };
        let form = ConnectionForm::new(
            frame,
            SmGauge::zero(n, couplings)?,
            HiggsField::zero(n, 0.0)?,
            1.0,
            ConnectionForm::default_chi(),
        )?;
        Self::new(form, Reparametrization::default(), e)
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// `(E, □E)` at `p`.
    fn endomorphism(&self, p: &Point) -> Result<(f64, f64)> {
        match &self.e {
            Endomorphism::Zero => Ok((0.0, 0.0)),
            Endomorphism::Constant(v) => Ok((*v, 0.0)),
            Endomorphism::Field(f) => {
                let n = self.dim();
                let jet = f.jet(p, 2)?;
                let gam = self.metric.christoffel(p)?;
                let inv = self.metric.at(p)?.inv;
                let mut lap = 0.0;
                for m in 0..n {
                    for v in 0..n {
                        let mut s = jet.d2(m, v, 0);
                        for l in 0..n {
                            s -= gam.get(l, m, v) * jet.d1(l, 0);
                        }
                        lap += inv[(m, v)] * s;
                    }
                }
                Ok((jet.value[0], lap))
            }
        }
    }

    /// Every entry of [`DENSITIES`] at `p`, multiplied by `√|γ|`.
    pub fn densities(&self, p: &Point) -> Result<Vec<f64>> {
        let cf = self.form.curvature(p)?;
        let vol = linalg::checked_det(&cf.metric)?.abs().sqrt();
        let (e, lap) = self.endomorphism(p)?;
        let lag = curvature_squared(&cf, &self.reparam)?;
        let mut out = vec![1.0, e, e * e, lap];
        for name in &DENSITIES[4..] {
            out.push(lag.term(name).map(|t| t.value).unwrap_or(0.0));
        }
        Ok(out.into_iter().map(|v| v * vol).collect())
    }
}

pub fn heat_kernel_coefficients(input: &HeatKernelInput, region: &Region, grid: usize) -> Result<HeatKernelCoefficients> {
    if region.dim() != input.dim() {
        return Err(Error::DimensionMismatch { left: region.dim(), right: input.dim() });
    }
    let bi = integrate_box(region, grid, DENSITIES.len(), |p| input.densities(p))?;
    let v = &bi.values;
    let e = &bi.errors;
    let k0 = 1.0 / (16.0 * PI * PI);
    let k4 = 1.0 / (192.0 * PI * PI);
    let a4_sum = 6.0 * v[2] + 2.0 * v[3] + v[4..].iter().sum::<f64>();
    let a4_err = 6.0 * e[2] + 2.0 * e[3] + e[4..].iter().sum::<f64>();
    Ok(HeatKernelCoefficients {
        a0: k0 * v[0],
        a2: k0 * v[1],
        a4: k4 * a4_sum,
        errors: [k0 * e[0], k0 * e[1], k4 * a4_err],
        integrals: DENSITIES
            .iter()
            .zip(v.iter().zip(e))
            .map(|(n, (val, err))| NamedIntegral { name: n.to_string(), value: *val, error: *err })
            .collect(),
        meta: bi.meta,
    })
}
