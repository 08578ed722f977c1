use nalgebra::DMatrix;

use crate::dual::HyperDual;
use crate::field::{ChartField, Jet, Point};
use crate::linalg;
use crate::tensor::{Slot, Tensor};
use crate::{Error, Result};

/// Symmetric rank-2 metric field `γ_μν`.
#[derive(Clone, Debug)]
pub struct GeneralizedMetric {
    field: ChartField,
}

/// Metric data at one point: components, inverse and determinant.
#[derive(Clone, Debug)]
pub struct MetricPoint {
    pub g: DMatrix<f64>,
    pub inv: DMatrix<f64>,
    pub det: f64,
}

/// Whether `√|det γ|` came from a negative (Lorentzian) or positive determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolumeMode {
    Lorentzian,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeElement {
    pub value: f64,
    pub mode: VolumeMode,
}

impl GeneralizedMetric {
    /// Wrap an `n×n` field; the components are symmetrized so that
    /// `γ_μν = γ_νμ` holds exactly.
    pub fn new(field: ChartField) -> Result<Self> {
        let n = field.dim();
        if field.shape() != [n, n] {
            return Err(Error::Shape(format!(
                "metric field must have shape [{n}, {n}], got {:?}",
                field.shape()
            )));
        }
        let sym = field.compose(vec![n, n], vec![Slot::coord_down(); 2], move |g| {
            let mut out = vec![HyperDual::ZERO; n * n];
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] = if i == j { g[i * n + j] } else { (g[i * n + j] + g[j * n + i]) * 0.5 };
                }
            }
            out
        });
        Ok(Self { field: sym })
    }

    /// Metric from a closure over hyper-dual coordinates returning row-major `γ_μν`.
    pub fn from_fn(n: usize, f: impl Fn(&[HyperDual]) -> Vec<HyperDual> + Send + Sync + 'static) -> Result<Self> {
        Self::new(ChartField::from_dual(n, vec![n, n], vec![Slot::coord_down(); 2], f))
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn field(&self) -> &ChartField {
        &self.field
    }

    pub fn at(&self, p: &Point) -> Result<MetricPoint> {
        let n = self.dim();
        let g = DMatrix::from_row_slice(n, n, &self.field.value(p)?);
        Self::point_from_matrix(g)
    }

    pub(crate) fn point_from_matrix(g: DMatrix<f64>) -> Result<MetricPoint> {
        let det = linalg::checked_det(&g)?;
        let inv = linalg::checked_inverse(&g)?;
        Ok(MetricPoint { g, inv, det })
    }

    pub fn tensor_at(&self, p: &Point) -> Result<Tensor<f64>> {
        self.field.value_tensor(p)
    }

    /// Value with derivatives to `order`, plus inverse and determinant.
    pub fn jet(&self, p: &Point, order: usize) -> Result<(MetricPoint, Jet)> {
        let jet = self.field.jet(p, order)?;
        let n = self.dim();
        let mp = Self::point_from_matrix(DMatrix::from_row_slice(n, n, &jet.value))?;
        Ok((mp, jet))
    }

    /// `√|det γ|` with the sign of the determinant recorded.
    pub fn volume_element(&self, p: &Point) -> Result<VolumeElement> {
        let mp = self.at(p)?;
        Ok(mp.volume_element())
    }
}

impl MetricPoint {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn volume_element(&self) -> VolumeElement {
        VolumeElement {
            value: self.det.abs().sqrt(),
            mode: if self.det < 0.0 { VolumeMode::Lorentzian } else { VolumeMode::Euclidean },
        }
    }

    /// `γ_μν v^μ w^ν`.
    pub fn inner(&self, v: &[f64], w: &[f64]) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += self.g[(i, j)] * v[i] * w[j];
            }
        }
        s
    }
}
