//! Dense multi-index tensors evaluated at a single point.
//!
//! Every slot carries a [`Variance`] and an [`IndexKind`], so a frame index
//! contracted with `η_ab` can never be confused with a coordinate index
//! contracted with `γ_μν`. Storage is row-major.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg;
use crate::{Error, Result};

/// Largest supported chart dimension.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flipped(self) -> Self {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// Greek (coordinate), Latin (frame) or internal (gauge/spinor) index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Coordinate,
    Frame,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub kind: IndexKind,
    pub variance: Variance,
}

impl Slot {
    pub const fn coord_up() -> Self {
        Slot { kind: IndexKind::Coordinate, variance: Variance::Upper }
    }
    pub const fn coord_down() -> Self {
        Slot { kind: IndexKind::Coordinate, variance: Variance::Lower }
    }
    pub const fn frame_up() -> Self {
        Slot { kind: IndexKind::Frame, variance: Variance::Upper }
    }
    pub const fn frame_down() -> Self {
        Slot { kind: IndexKind::Frame, variance: Variance::Lower }
    }
    pub const fn internal() -> Self {
        Slot { kind: IndexKind::Internal, variance: Variance::Lower }
    }
}

/// Scalar field of tensor entries: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self {
        Self::default()
    }
    fn from_real(v: f64) -> Self;
    fn modulus(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl Scalar for f64 {
    fn from_real(v: f64) -> Self {
        v
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Complex64 {
    fn from_real(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T = f64> {
    dims: Vec<usize>,
    slots: Vec<Slot>,
    data: Vec<T>,
}

/// How `contract` pairs two slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// One upper and one lower index of the same kind.
    Mixed,
    /// Metric-free trace, allowed for any two slots of equal extent.
    Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(dims: Vec<usize>, slots: Vec<Slot>) -> Result<Self> {
        let len = dims.iter().product();
        Self::from_vec(dims, slots, vec![T::zero(); len])
    }

    pub fn from_vec(dims: Vec<usize>, slots: Vec<Slot>, data: Vec<T>) -> Result<Self> {
        if dims.len() != slots.len() {
            return Err(Error::Shape(format!(
                "{} extents but {} slot descriptors",
                dims.len(),
                slots.len()
            )));
        }
        let expected: usize = dims.iter().product();
        if expected != data.len() {
            return Err(Error::Shape(format!(
                "data length {} does not match extents {:?}",
                data.len(),
                dims
            )));
        }
        Ok(Self { dims, slots, data })
    }

    pub fn scalar(v: T) -> Self {
        Self { dims: vec![], slots: vec![], data: vec![v] }
    }

    /// Kronecker delta `δ^μ_ν` on `n` coordinates.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::from_real(1.0);
        }
        Self { dims: vec![n, n], slots: vec![Slot::coord_up(), Slot::coord_down()], data }
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Tensor<U> {
        Tensor { dims: self.dims.clone(), slots: self.slots.clone(), data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| v * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!("cannot add {:?} and {:?}", self.dims, other.dims)));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Ok(Self { dims: self.dims.clone(), slots: self.slots.clone(), data })
    }

    /// Largest entrywise difference; `f64::INFINITY` if shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).modulus()).fold(0.0, f64::max)
    }

    /// Contract slots `i` and `j`, summing over their shared extent.
    pub fn contract(&self, i: usize, j: usize, pairing: Pairing) -> Result<Self> {
        let r = self.rank();
        if i >= r || j >= r || i == j {
            return Err(Error::IndexOutOfRange { index: i.max(j), rank: r });
        }
        if self.dims[i] != self.dims[j] {
            return Err(Error::DimensionMismatch { left: self.dims[i], right: self.dims[j] });
        }
        if pairing == Pairing::Mixed {
            let (a, b) = (self.slots[i], self.slots[j]);
            if a.variance == b.variance || a.kind != b.kind {
                return Err(Error::Variance(format!(
                    "slots {i} and {j} ({a:?}, {b:?}) need one upper and one lower index of the same kind"
                )));
            }
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let keep: Vec<usize> = (0..r).filter(|&k| k != lo && k != hi).collect();
        let dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let slots: Vec<Slot> = keep.iter().map(|&k| self.slots[k]).collect();
        let mut out = Tensor::zeros(dims.clone(), slots)?;
        let strides = self.strides();
        let n = self.dims[lo];
        let pair_stride = strides[lo] + strides[hi];
        for (o, slot) in out.data.iter_mut().enumerate() {
            // decompose output offset into the kept indices
            let mut rem = o;
            let mut base = 0;
            for (kk, &k) in keep.iter().enumerate().rev() {
                let d = dims[kk];
                base += (rem % d) * strides[k];
                rem /= d;
            }
            let mut acc = T::zero();
            for m in 0..n {
                acc = acc + self.data[base + m * pair_stride];
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Raise or lower slot `i` with the covariant metric `metric` (`g_μν`).
    pub fn raise_lower(&self, i: usize, metric: &Tensor<f64>, direction: Direction) -> Result<Self> {
        let r = self.rank();
        if i >= r {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        if metric.rank() != 2 || metric.dims[0] != metric.dims[1] {
            return Err(Error::Shape(format!("metric must be square rank 2, got {:?}", metric.dims)));
        }
        let n = metric.dims[0];
        if self.dims[i] != n {
            return Err(Error::DimensionMismatch { left: self.dims[i], right: n });
        }
        let want = match direction {
            Direction::Up => Variance::Lower,
            Direction::Down => Variance::Upper,
        };
        if self.slots[i].variance != want {
            return Err(Error::Variance(format!("slot {i} is already {:?}", self.slots[i].variance)));
        }
        let g = DMatrix::from_row_slice(n, n, metric.data());
        let asym = (&g - g.transpose()).amax();
        if asym > 1e-12 * g.amax().max(1.0) {
            return Err(Error::Shape(format!("metric is not symmetric (asymmetry {asym:e})")));
        }
        let m = match direction {
            Direction::Down => g,
            Direction::Up => linalg::checked_inverse(&g)?,
        };
        let mut out = self.clone();
        out.slots[i].variance = want.flipped();
        let strides = self.strides();
        let si = strides[i];
        for (o, slot) in out.data.iter_mut().enumerate() {
            let k = (o / si) % n;
            let base = o - k * si;
            let mut acc = T::zero();
            for l in 0..n {
                acc = acc + T::from_real(m[(k, l)]) * self.data[base + l * si];
            }
            *slot = acc;
        }
        Ok(out)
    }
}

impl Tensor<f64> {
    /// Row-major `n×n` matrix view of a rank-2 tensor.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        if self.rank() != 2 {
            return Err(Error::Shape(format!("expected rank 2, got rank {}", self.rank())));
        }
        Ok(DMatrix::from_row_slice(self.dims[0], self.dims[1], &self.data))
    }

    pub fn from_matrix(m: &DMatrix<f64>, slots: [Slot; 2]) -> Self {
        let data = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)])).collect();
        Tensor { dims: vec![m.nrows(), m.ncols()], slots: slots.to_vec(), data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_identity_is_dimension() {
        let d = Tensor::<f64>::identity(4);
        let t = d.contract(0, 1, Pairing::Mixed).unwrap();
        assert_eq!(t.rank(), 0);
        assert_eq!(t.data()[0], 4.0);
    }

    #[test]
    fn metric_free_trace() {
        let t = Tensor::from_vec(
            vec![3, 3],
            vec![Slot::frame_down(), Slot::frame_down()],
            vec![1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0],
        )
        .unwrap();
        assert!(t.contract(0, 1, Pairing::Mixed).is_err());
        assert_eq!(t.contract(0, 1, Pairing::Trace).unwrap().data()[0], 6.0);
    }

    #[test]
    fn contraction_errors() {
        let t = Tensor::<f64>::zeros(vec![2, 3], vec![Slot::coord_up(), Slot::coord_down()]).unwrap();
        assert!(matches!(t.contract(0, 1, Pairing::Trace), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(t.contract(0, 2, Pairing::Trace), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn minkowski_lowering_flips_time() {
        let eta = Tensor::from_matrix(
            &DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 1.0, 1.0, 1.0])),
            [Slot::coord_down(), Slot::coord_down()],
        );
        let v = Tensor::from_vec(vec![4], vec![Slot::coord_up()], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let low = v.raise_lower(0, &eta, Direction::Down).unwrap();
        assert_eq!(low.data(), &[-1.0, 2.0, 3.0, 4.0]);
        assert_eq!(low.slots()[0].variance, Variance::Lower);
        let euclid = Tensor::<f64>::identity(4).map(|x| x);
        let euclid = Tensor::from_vec(vec![4, 4], vec![Slot::coord_down(); 2], euclid.into_data()).unwrap();
        assert_eq!(v.raise_lower(0, &euclid, Direction::Down).unwrap().data(), v.data());
    }

    #[test]
    fn singular_metric_rejected() {
        let g = Tensor::from_vec(vec![2, 2], vec![Slot::coord_down(); 2], vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let v = Tensor::from_vec(vec![2], vec![Slot::coord_down()], vec![1.0, 0.0]).unwrap();
        assert!(matches!(v.raise_lower(0, &g, Direction::Up), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn complex_entries_contract() {
        let i = Complex64::new(0.0, 1.0);
        let t = Tensor::from_vec(
            vec![2, 2],
            vec![Slot::coord_up(), Slot::coord_down()],
            vec![i, Complex64::from_real(5.0), Complex64::from_real(7.0), i],
        )
        .unwrap();
        assert_eq!(t.contract(0, 1, Pairing::Mixed).unwrap().data()[0], 2.0 * i);
    }
}
