//! Smooth fields over a coordinate chart and their derivatives.

use std::fmt;
use std::sync::Arc;

use crate::dual::HyperDual;
use crate::tensor::{Slot, Tensor, MAX_DIM};
use crate::{Error, Result};

/// Chart coordinates `x^μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::Shape(format!(
                "point dimension {} outside 1..={MAX_DIM}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("point {coords:?}")));
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn shifted(&self, axis: usize, by: f64) -> Self {
        let mut c = self.0.clone();
        c[axis] += by;
        Self(c)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// Diagonal frame metric `η_ab` with entries ±1.
#[derive(Clone, Debug, PartialEq)]
pub struct Signature(Vec<f64>);

impl Signature {
    pub fn new(signs: Vec<f64>) -> Result<Self> {
        if signs.is_empty() || signs.len() > MAX_DIM {
            return Err(Error::Shape(format!("signature length {}", signs.len())));
        }
        if signs.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(Error::Shape(format!("signature entries must be ±1, got {signs:?}")));
        }
        Ok(Self(signs))
    }

    pub fn euclidean(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    /// `(−, +, …, +)`.
    pub fn lorentzian(n: usize) -> Self {
        let mut s = vec![1.0; n];
        s[0] = -1.0;
        Self(s)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn signs(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, a: usize) -> f64 {
        self.0[a]
    }

    pub fn is_euclidean(&self) -> bool {
        self.0.iter().all(|&s| s > 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMode {
    Dual,
    FiniteDifference,
}

pub type DualFn = dyn Fn(&[HyperDual]) -> Vec<HyperDual> + Send + Sync;
pub type PlainFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

#[derive(Clone)]
enum Evaluator {
    Dual(Arc<DualFn>),
    Plain(Arc<PlainFn>),
}

/// A tensor-valued field over an `n`-dimensional chart.
///
/// Fields built from a hyper-dual closure can be differentiated exactly;
/// plain `f64` closures only support central differences.
#[derive(Clone)]
pub struct ChartField {
    dim: usize,
    shape: Vec<usize>,
    slots: Vec<Slot>,
    eval: Evaluator,
    mode: DerivativeMode,
    fd_step: f64,
}

impl fmt::Debug for ChartField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartField")
            .field("dim", &self.dim)
            .field("shape", &self.shape)
            .field("mode", &self.mode)
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Value with first and second coordinate derivatives, flattened.
///
/// `d1[μ·len + c] = ∂_μ f_c`, `d2[(μ·n + ν)·len + c] = ∂_μ∂_ν f_c`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub n: usize,
    pub len: usize,
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl Jet {
    pub fn d1(&self, mu: usize, c: usize) -> f64 {
        self.d1[mu * self.len + c]
    }

    pub fn d2(&self, mu: usize, nu: usize, c: usize) -> f64 {
        self.d2[(mu * self.n + nu) * self.len + c]
    }
}

impl ChartField {
    pub fn from_dual(
        dim: usize,
        shape: Vec<usize>,
        slots: Vec<Slot>,
        f: impl Fn(&[HyperDual]) -> Vec<HyperDual> + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            shape,
            slots,
            eval: Evaluator::Dual(Arc::new(f)),
            mode: DerivativeMode::Dual,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    pub fn from_plain(
        dim: usize,
        shape: Vec<usize>,
        slots: Vec<Slot>,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            shape,
            slots,
            eval: Evaluator::Plain(Arc::new(f)),
            mode: DerivativeMode::FiniteDifference,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    /// Constant field.
    pub fn constant(dim: usize, shape: Vec<usize>, slots: Vec<Slot>, value: Vec<f64>) -> Self {
        Self::from_dual(dim, shape, slots, move |_| value.iter().map(|&v| HyperDual::constant(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn supports_dual(&self) -> bool {
        matches!(self.eval, Evaluator::Dual(_))
    }

    /// Switch derivative mode; dual mode is only available for dual closures.
    pub fn with_mode(mut self, mode: DerivativeMode) -> Result<Self> {
        if mode == DerivativeMode::Dual && !self.supports_dual() {
            return Err(Error::Shape("plain field cannot use dual-number derivatives".into()));
        }
        self.mode = mode;
        Ok(self)
    }

    pub fn with_fd_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Shape(format!("finite-difference step must be positive, got {step}")));
        }
        self.fd_step = step;
        Ok(self)
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { left: x.len(), right: self.dim });
        }
        Ok(())
    }

    fn eval_raw(&self, x: &[f64]) -> Vec<f64> {
        match &self.eval {
            Evaluator::Dual(f) => {
                let xs: Vec<HyperDual> = x.iter().map(|&v| HyperDual::constant(v)).collect();
                f(&xs).into_iter().map(|h| h.re).collect()
            }
            Evaluator::Plain(f) => f(x),
        }
    }

    fn finite(&self, vals: Vec<f64>, x: &[f64]) -> Result<Vec<f64>> {
        if vals.len() != self.len() {
            return Err(Error::Shape(format!(
                "field returned {} components, expected {}",
                vals.len(),
                self.len()
            )));
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("field evaluation at {x:?}")));
        }
        Ok(vals)
    }

    pub fn value(&self, p: &Point) -> Result<Vec<f64>> {
        self.check_point(p.coords())?;
        self.finite(self.eval_raw(p.coords()), p.coords())
    }

    pub fn value_tensor(&self, p: &Point) -> Result<Tensor<f64>> {
        Tensor::from_vec(self.shape.clone(), self.slots.clone(), self.value(p)?)
    }

    /// Evaluate on hyper-dual coordinates. Plain fields yield constants.
    pub fn eval_dual(&self, x: &[HyperDual]) -> Vec<HyperDual> {
        match &self.eval {
            Evaluator::Dual(f) => f(x),
            Evaluator::Plain(f) => {
                let xs: Vec<f64> = x.iter().map(|h| h.re).collect();
                f(&xs).into_iter().map(HyperDual::constant).collect()
            }
        }
    }

    /// Pointwise composition `x ↦ g(self(x))`, preserving dual support.
    pub fn compose(
        &self,
        shape: Vec<usize>,
        slots: Vec<Slot>,
        g: impl Fn(&[HyperDual]) -> Vec<HyperDual> + Send + Sync + 'static,
    ) -> ChartField {
        let g = Arc::new(g);
        let mut out = match &self.eval {
            Evaluator::Dual(f) => {
                let f = f.clone();
                ChartField::from_dual(self.dim, shape, slots, move |x| g(&f(x)))
            }
            Evaluator::Plain(f) => {
                let f = f.clone();
                ChartField::from_plain(self.dim, shape, slots, move |x| {
                    let v: Vec<HyperDual> = f(x).into_iter().map(HyperDual::constant).collect();
                    g(&v).into_iter().map(|h| h.re).collect()
                })
            }
        };
        out.fd_step = self.fd_step;
        if self.mode == DerivativeMode::FiniteDifference {
            out.mode = DerivativeMode::FiniteDifference;
        }
        out
    }

    fn step(&self, xi: f64) -> f64 {
        self.fd_step * xi.abs().max(1.0)
    }

    /// Value and derivatives up to `order` (1 or 2) at `p`.
    pub fn jet(&self, p: &Point, order: usize) -> Result<Jet> {
        self.check_point(p.coords())?;
        if order == 0 || order > 2 {
            return Err(Error::Shape(format!("derivative order {order} not in 1..=2")));
        }
        let jet = match (&self.eval, self.mode) {
            (Evaluator::Dual(f), DerivativeMode::Dual) => self.dual_jet(f.as_ref(), p.coords(), order),
            _ => self.fd_jet(p.coords(), order),
        };
        let all_finite = jet.value.iter().chain(&jet.d1).chain(&jet.d2).all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::NonFinite(format!("field derivatives near {:?}", p.coords())));
        }
        Ok(jet)
    }

    fn dual_jet(&self, f: &DualFn, x: &[f64], order: usize) -> Jet {
        let n = self.dim;
        let len = self.len();
        let mut d1 = vec![0.0; n * len];
        let mut d2 = if order == 2 { vec![0.0; n * n * len] } else { vec![] };
        let mut value = vec![0.0; len];
        let seed = |mu: usize, nu: usize| -> Vec<HyperDual> {
            x.iter()
                .enumerate()
                .map(|(k, &v)| {
                    HyperDual::new(v, if k == mu { 1.0 } else { 0.0 }, if k == nu { 1.0 } else { 0.0 }, 0.0)
                })
                .collect()
        };
        for mu in 0..n {
            let nus: Vec<usize> = if order == 2 { (mu..n).collect() } else { vec![mu] };
            for nu in nus {
                let out = f(&seed(mu, nu));
                for (c, h) in out.iter().enumerate().take(len) {
                    if mu == nu {
                        value[c] = h.re;
                        d1[mu * len + c] = h.e1;
                    }
                    if order == 2 {
                        d2[(mu * n + nu) * len + c] = h.e12;
                        d2[(nu * n + mu) * len + c] = h.e12;
                    }
                }
            }
        }
        Jet { n, len, value, d1, d2 }
    }

    fn fd_jet(&self, x: &[f64], order: usize) -> Jet {
        let n = self.dim;
        let len = self.len();
        let value = self.eval_raw(x);
        let shifted = |moves: &[(usize, f64)]| {
            let mut y = x.to_vec();
            for &(axis, by) in moves {
                y[axis] += by;
            }
            self.eval_raw(&y)
        };
        let mut d1 = vec![0.0; n * len];
        for mu in 0..n {
            let h = self.step(x[mu]);
            let (p, m) = (shifted(&[(mu, h)]), shifted(&[(mu, -h)]));
            for c in 0..len {
                d1[mu * len + c] = (p[c] - m[c]) / (2.0 * h);
            }
        }
        let mut d2 = vec![];
        if order == 2 {
            d2 = vec![0.0; n * n * len];
            // Second differences need a larger step to balance cancellation.
            let h2 = |xi: f64| 10.0 * self.step(xi);
            for mu in 0..n {
                let hm = h2(x[mu]);
                let (p, m) = (shifted(&[(mu, hm)]), shifted(&[(mu, -hm)]));
                for c in 0..len {
                    d2[(mu * n + mu) * len + c] = (p[c] - 2.0 * value[c] + m[c]) / (hm * hm);
                }
                for nu in mu + 1..n {
                    let hn = h2(x[nu]);
                    let pp = shifted(&[(mu, hm), (nu, hn)]);
                    let pm = shifted(&[(mu, hm), (nu, -hn)]);
                    let mp = shifted(&[(mu, -hm), (nu, hn)]);
                    let mm = shifted(&[(mu, -hm), (nu, -hn)]);
                    for c in 0..len {
                        let v = (pp[c] - pm[c] - mp[c] + mm[c]) / (4.0 * hm * hn);
                        d2[(mu * n + nu) * len + c] = v;
                        d2[(nu * n + mu) * len + c] = v;
                    }
                }
            }
        }
        Jet { n, len, value, d1, d2 }
    }

    /// Derivative tensor with `order` covariant coordinate slots appended.
    pub fn differentiate(&self, p: &Point, order: usize) -> Result<Tensor<f64>> {
        let jet = self.jet(p, order)?;
        let n = self.dim;
        let len = self.len();
        let mut dims = self.shape.clone();
        let mut slots = self.slots.clone();
        for _ in 0..order {
            dims.push(n);
            slots.push(Slot::coord_down());
        }
        let mut data = Vec::with_capacity(len * n.pow(order as u32));
        for c in 0..len {
            if order == 1 {
                data.extend((0..n).map(|mu| jet.d1(mu, c)));
            } else {
                for mu in 0..n {
                    data.extend((0..n).map(|nu| jet.d2(mu, nu, c)));
                }
            }
        }
        Tensor::from_vec(dims, slots, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2y() -> ChartField {
        ChartField::from_dual(2, vec![], vec![], |x| vec![x[0] * x[0] * x[1]])
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let f = ChartField::constant(3, vec![2], vec![Slot::coord_down()], vec![1.5, -2.0]);
        let p = Point::new(vec![0.3, 1.0, -4.0]).unwrap();
        assert_eq!(f.differentiate(&p, 1).unwrap().max_abs(), 0.0);
        assert_eq!(f.differentiate(&p, 2).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn gradient_of_x2y() {
        let p = Point::new(vec![2.0, 3.0]).unwrap();
        let d = x2y().differentiate(&p, 1).unwrap();
        assert_eq!(d.data(), &[12.0, 4.0]);
        let fd = x2y().with_mode(DerivativeMode::FiniteDifference).unwrap().differentiate(&p, 1).unwrap();
        assert!(fd.max_abs_diff(&d) < 1e-8);
    }

    #[test]
    fn hessian_of_x2y() {
        let p = Point::new(vec![2.0, 3.0]).unwrap();
        let h = x2y().differentiate(&p, 2).unwrap();
        // [[2y, 2x], [2x, 0]]
        assert_eq!(h.data(), &[6.0, 4.0, 4.0, 0.0]);
    }

    #[test]
    fn non_finite_evaluation_is_an_error() {
        let f = ChartField::from_dual(1, vec![], vec![], |x| vec![x[0].ln()]);
        let p = Point::new(vec![-1.0]).unwrap();
        assert!(matches!(f.differentiate(&p, 1), Err(Error::NonFinite(_))));
    }

    #[test]
    fn plain_fields_refuse_dual_mode() {
        let f = ChartField::from_plain(1, vec![], vec![], |x| vec![x[0]]);
        assert!(f.with_mode(DerivativeMode::Dual).is_err());
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(vec![1.0, 0.5]).is_err());
        assert!(Signature::lorentzian(4).signs()[0] < 0.0);
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![0.0; 9]).is_err());
    }
}
