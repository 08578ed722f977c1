//! Tensor-product trapezoid quadrature over coordinate boxes.

use rayon::prelude::*;

use super::quadrature::pairwise_sum;
use crate::field::Point;
use crate::{Error, Result};

/// Coordinate box; periodic axes identify `lower` with `upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub periodic: Vec<bool>,
}

impl Region {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, periodic: Vec<bool>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { left: lower.len(), right: upper.len() });
        }
        if periodic.len() != lower.len() {
            return Err(Error::DimensionMismatch { left: periodic.len(), right: lower.len() });
        }
        if lower.is_empty() {
            return Err(Error::InvalidParameter("region needs at least one axis".into()));
        }
        for (a, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && u > l) {
                return Err(Error::InvalidParameter(format!("axis {a}: need finite lower < upper, got [{l}, {u}]")));
            }
        }
        Ok(Self { lower, upper, periodic })
    }

    pub fn unit_box(n: usize) -> Self {
        Self { lower: vec![0.0; n], upper: vec![1.0; n], periodic: vec![false; n] }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn coordinate_volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).product()
    }
}

/// What was used to integrate.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureMeta {
    pub rule: String,
    /// Nodes per axis on the coarse grid.
    pub coarse: usize,
    /// Nodes per axis on the fine grid.
    pub fine: Vec<usize>,
    pub points: usize,
    pub periodic: Vec<bool>,
}

/// Componentwise integrals on the fine grid with `|fine − coarse| / 3` as
/// error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxIntegral {
    pub values: Vec<f64>,
    pub coarse: Vec<f64>,
    pub errors: Vec<f64>,
    pub meta: QuadratureMeta,
}

struct Axis {
    nodes: Vec<f64>,
    fine_w: Vec<f64>,
    coarse_w: Vec<f64>,
}

fn axis(lower: f64, upper: f64, periodic: bool, n: usize) -> Axis {
    let len = upper - lower;
    if periodic {
        let f = 2 * n;
        let h = len / f as f64;
        Axis {
            nodes: (0..f).map(|k| lower + h * k as f64).collect(),
            fine_w: vec![h; f],
            coarse_w: (0..f).map(|k| if k % 2 == 0 { 2.0 * h } else { 0.0 }).collect(),
        }
    } else {
        let f = 2 * n - 1;
        let h = len / (f - 1) as f64;
        let ends = |k: usize, w: f64| if k == 0 || k == f - 1 { 0.5 * w } else { w };
        Axis {
            nodes: (0..f).map(|k| if k == f - 1 { upper } else { lower + h * k as f64 }).collect(),
            fine_w: (0..f).map(|k| ends(k, h)).collect(),
            coarse_w: (0..f).map(|k| if k % 2 == 0 { ends(k, 2.0 * h) } else { 0.0 }).collect(),
        }
    }
}

/// Integrate a vector of `width` densities over `region` with `n ≥ 2` coarse
/// nodes per axis. Points are evaluated in parallel; sums run in grid order.
pub fn integrate_box<F>(region: &Region, n: usize, width: usize, f: F) -> Result<BoxIntegral>
where
    F: Fn(&Point) -> Result<Vec<f64>> + Sync,
{
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid needs at least 2 nodes per axis, got {n}")));
    }
    let axes: Vec<Axis> =
        (0..region.dim()).map(|a| axis(region.lower[a], region.upper[a], region.periodic[a], n)).collect();
    let sizes: Vec<usize> = axes.iter().map(|a| a.nodes.len()).collect();
    let total: usize = sizes.iter().product();
    let index = |mut k: usize| {
        let mut idx = vec![0; sizes.len()];
        for a in (0..sizes.len()).rev() {
            idx[a] = k % sizes[a];
            k /= sizes[a];
        }
        idx
    };
    let samples: Vec<(Vec<f64>, f64, f64)> = (0..total)
        .into_par_iter()
        .map(|k| {
            let idx = index(k);
            let x: Vec<f64> = idx.iter().enumerate().map(|(a, &i)| axes[a].nodes[i]).collect();
            let wf: f64 = idx.iter().enumerate().map(|(a, &i)| axes[a].fine_w[i]).product();
            let wc: f64 = idx.iter().enumerate().map(|(a, &i)| axes[a].coarse_w[i]).product();
            let v = f(&Point::new(x)?)?;
            if v.len() != width {
                return Err(Error::DimensionMismatch { left: v.len(), right: width });
            }
            Ok((v, wf, wc))
        })
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(width);
    let mut coarse = Vec::with_capacity(width);
    for c in 0..width {
        let fine_terms: Vec<f64> = samples.iter().map(|(v, wf, _)| v[c] * wf).collect();
        let coarse_terms: Vec<f64> = samples.iter().map(|(v, _, wc)| v[c] * wc).collect();
        values.push(pairwise_sum(&fine_terms));
        coarse.push(pairwise_sum(&coarse_terms));
    }
    let errors = values.iter().zip(&coarse).map(|(f, c)| (f - c).abs() / 3.0).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("integral over region".into()));
    }
    Ok(BoxIntegral {
        values,
        coarse,
        errors,
        meta: QuadratureMeta {
            rule: "trapezoid, fine vs coarse Richardson estimate".into(),
            coarse: n,
            fine: sizes,
            points: total,
            periodic: region.periodic.clone(),
        },
    })
}
