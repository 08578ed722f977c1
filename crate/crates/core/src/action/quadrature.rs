//! Adaptive Gauss–Kronrod (7/15) quadrature and pairwise summation.

use std::collections::BinaryHeap;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Globally adaptive bisection on `[a, b]` until the summed error estimate is
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_intervals: usize) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature("finite interval required".into()));
    }
    let (v, e) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= max_intervals {
            return Err(Error::Quadrature(format!(
                "no convergence after {max_intervals} subintervals (estimate {total:e}, error {err:e})"
            )));
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(f, p.a, m);
        let (v2, e2) = gk15(f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Piece { a: p.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, error: e2 });
        if !total.is_finite() {
            return Err(Error::Quadrature("integrand produced a non-finite value".into()));
        }
    }
    // re-sum in interval order so the result does not depend on heap history
    let mut pieces: Vec<Piece> = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pairwise_sum(&pieces.iter().map(|p| p.value).collect::<Vec<_>>());
    let error = pieces.iter().map(|p| p.error).sum();
    Ok(QuadResult { value, error, intervals: pieces.len() })
}

/// `∫₀^∞ f(u) du` as `∫₀¹ f` plus the tail `∫₀¹ f(1/v) v⁻² dv`.
pub fn integrate_half_line(f: &dyn Fn(f64) -> f64, abs_tol: f64, rel_tol: f64, max_intervals: usize) -> Result<QuadResult> {
    let head = integrate(f, 0.0, 1.0, abs_tol, rel_tol, max_intervals)?;
    let g = |v: f64| {
        let u = 1.0 / v;
        let fu = f(u);
        if fu == 0.0 {
            0.0
        } else {
            fu * u * u
        }
    };
    let tail = integrate(&g, 0.0, 1.0, abs_tol, rel_tol, max_intervals)?;
    Ok(QuadResult {
        value: head.value + tail.value,
        error: head.error + tail.error,
        intervals: head.intervals + tail.intervals,
    })
}

/// Pairwise (cascade) summation in slice order.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1..=8 => v.iter().sum(),
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}
