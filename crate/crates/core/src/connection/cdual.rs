//! Complex hyper-dual scalars and small dense matrices over them, so that
//! matrix-valued fields can be differentiated exactly.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::dual::HyperDual;
use crate::linalg::CMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDual {
    pub re: HyperDual,
    pub im: HyperDual,
}

impl CDual {
    pub const ZERO: CDual = CDual { re: HyperDual::ZERO, im: HyperDual::ZERO };

    pub fn new(re: HyperDual, im: HyperDual) -> Self {
        Self { re, im }
    }

    pub fn real(re: HyperDual) -> Self {
        Self { re, im: HyperDual::ZERO }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { re: HyperDual::constant(c.re), im: HyperDual::constant(c.im) }
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    pub fn value(self) -> Complex64 {
        Complex64::new(self.re.re, self.im.re)
    }

    /// `e^{iθ}`.
    pub fn cis(theta: HyperDual) -> Self {
        Self { re: theta.cos(), im: theta.sin() }
    }

    pub fn scale(self, s: HyperDual) -> Self {
        Self { re: self.re * s, im: self.im * s }
    }
}

impl Add for CDual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for CDual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for CDual {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for CDual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

/// Square matrix of [`CDual`] entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMatrix {
    pub n: usize,
    pub data: Vec<CDual>,
}

impl DualMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![CDual::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = CDual::real(HyperDual::ONE);
        }
        m
    }

    pub fn from_constant(c: &CMatrix) -> Self {
        let n = c.nrows();
        Self { n, data: (0..n * n).map(|k| CDual::constant(c[(k / n, k % n)])).collect() }
    }

    /// `s · c` for a real hyper-dual scalar and constant complex matrix.
    pub fn scaled_constant(c: &CMatrix, s: HyperDual) -> Self {
        let n = c.nrows();
        Self { n, data: (0..n * n).map(|k| CDual::constant(c[(k / n, k % n)]).scale(s)).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> CDual {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: CDual) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == CDual::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * o.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, s: HyperDual) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn dagger(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn value(&self) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).value())
    }

    /// Flatten as `[i][j][re, im]` hyper-dual reals.
    pub fn flatten_into(&self, out: &mut Vec<HyperDual>) {
        for c in &self.data {
            out.push(c.re);
            out.push(c.im);
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&DualMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        out
    }
}
