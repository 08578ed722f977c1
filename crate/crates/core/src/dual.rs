//! Hyper-dual numbers for exact first and second derivatives.
//!
//! A hyper-dual number `a + b ε₁ + c ε₂ + d ε₁ε₂` with `ε₁² = ε₂² = 0` carries
//! a value, two independent directional derivatives and the mixed second
//! derivative. Seeding `ε₁` along `e_μ` and `ε₂` along `e_ν` yields `∂_μ f`,
//! `∂_ν f` and `∂_μ∂_ν f` from a single evaluation, with no truncation error.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HyperDual {
    pub re: f64,
    pub e1: f64,
    pub e2: f64,
    pub e12: f64,
}

impl HyperDual {
    pub const ZERO: HyperDual = HyperDual::constant(0.0);
    pub const ONE: HyperDual = HyperDual::constant(1.0);

    pub const fn new(re: f64, e1: f64, e2: f64, e12: f64) -> Self {
        Self { re, e1, e2, e12 }
    }

    pub const fn constant(re: f64) -> Self {
        Self::new(re, 0.0, 0.0, 0.0)
    }

    /// Applies a scalar function given its value and first two derivatives at `re`.
    #[inline]
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Self {
            re: f0,
            e1: f1 * self.e1,
            e2: f1 * self.e2,
            e12: f1 * self.e12 + f2 * self.e1 * self.e2,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.e1.is_finite() && self.e2.is_finite() && self.e12.is_finite()
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.re;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.re))
    }

    pub fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.re;
        self.chain(self.re.ln(), r, -r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.re.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.re.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.re.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh(), self.re.sinh())
    }

    pub fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh(), self.re.cosh())
    }

    pub fn tanh(self) -> Self {
        let t = self.re.tanh();
        let s = 1.0 - t * t;
        self.chain(t, s, -2.0 * t * s)
    }

    pub fn atan(self) -> Self {
        let d = 1.0 / (1.0 + self.re * self.re);
        self.chain(self.re.atan(), d, -2.0 * self.re * d * d)
    }

    pub fn abs(self) -> Self {
        if self.re < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::ONE,
            1 => self,
            2 => self * self,
            _ => {
                let x = self.re;
                let nf = f64::from(n);
                self.chain(
                    x.powi(n),
                    nf * x.powi(n - 1),
                    nf * (nf - 1.0) * x.powi(n - 2),
                )
            }
        }
    }

    pub fn powf(self, p: f64) -> Self {
        if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
            return self.powi(p as i32);
        }
        let x = self.re;
        self.chain(x.powf(p), p * x.powf(p - 1.0), p * (p - 1.0) * x.powf(p - 2.0))
    }

    /// General power `self^rhs` with a hyper-dual exponent.
    pub fn pow(self, rhs: HyperDual) -> Self {
        if rhs.e1 == 0.0 && rhs.e2 == 0.0 && rhs.e12 == 0.0 {
            return self.powf(rhs.re);
        }
        (rhs * self.ln()).exp()
    }
}

impl fmt::Display for HyperDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε₁ + {}ε₂ + {}ε₁ε₂", self.re, self.e1, self.e2, self.e12)
    }
}

impl From<f64> for HyperDual {
    fn from(v: f64) -> Self {
        Self::constant(v)
    }
}

impl Add for HyperDual {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.e1 + o.e1, self.e2 + o.e2, self.e12 + o.e12)
    }
}

impl Sub for HyperDual {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.e1 - o.e1, self.e2 - o.e2, self.e12 - o.e12)
    }
}

impl Mul for HyperDual {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re,
            self.re * o.e1 + self.e1 * o.re,
            self.re * o.e2 + self.e2 * o.re,
            self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        )
    }
}

impl Div for HyperDual {
    type Output = Self;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Neg for HyperDual {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.e1, -self.e2, -self.e12)
    }
}

impl Add<f64> for HyperDual {
    type Output = Self;
    #[inline]
    fn add(self, o: f64) -> Self {
        Self { re: self.re + o, ..self }
    }
}

impl Sub<f64> for HyperDual {
    type Output = Self;
    #[inline]
    fn sub(self, o: f64) -> Self {
        Self { re: self.re - o, ..self }
    }
}

impl Mul<f64> for HyperDual {
    type Output = Self;
    #[inline]
    fn mul(self, o: f64) -> Self {
        Self::new(self.re * o, self.e1 * o, self.e2 * o, self.e12 * o)
    }
}

impl Div<f64> for HyperDual {
    type Output = Self;
    #[inline]
    fn div(self, o: f64) -> Self {
        self * (1.0 / o)
    }
}

impl Add<HyperDual> for f64 {
    type Output = HyperDual;
    #[inline]
    fn add(self, o: HyperDual) -> HyperDual {
        o + self
    }
}

impl Sub<HyperDual> for f64 {
    type Output = HyperDual;
    #[inline]
    fn sub(self, o: HyperDual) -> HyperDual {
        -o + self
    }
}

impl Mul<HyperDual> for f64 {
    type Output = HyperDual;
    #[inline]
    fn mul(self, o: HyperDual) -> HyperDual {
        o * self
    }
}

impl Div<HyperDual> for f64 {
    type Output = HyperDual;
    #[inline]
    fn div(self, o: HyperDual) -> HyperDual {
        o.recip() * self
    }
}

impl AddAssign for HyperDual {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for HyperDual {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for HyperDual {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for HyperDual {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seeded(x: f64) -> HyperDual {
        HyperDual::new(x, 1.0, 1.0, 0.0)
    }

    #[test]
    fn product_rule_second_order() {
        // f = x^3 → f' = 3x², f'' = 6x
        let x = seeded(2.0);
        let f = x * x * x;
        assert_eq!(f.re, 8.0);
        assert_eq!(f.e1, 12.0);
        assert_eq!(f.e12, 12.0);
    }

    #[test]
    fn elementary_functions_match_closed_forms() {
        let x0 = 0.7;
        let x = seeded(x0);
        let cases: [(HyperDual, f64, f64); 5] = [
            (x.sin(), x0.cos(), -x0.sin()),
            (x.exp(), x0.exp(), x0.exp()),
            (x.ln(), 1.0 / x0, -1.0 / (x0 * x0)),
            (x.sqrt(), 0.5 / x0.sqrt(), -0.25 * x0.powf(-1.5)),
            (x.powf(2.5), 2.5 * x0.powf(1.5), 3.75 * x0.sqrt()),
        ];
        for (f, d1, d2) in cases {
            assert!((f.e1 - d1).abs() < 1e-14, "{f}");
            assert!((f.e12 - d2).abs() < 1e-13, "{f}");
        }
    }

    #[test]
    fn quotient_matches_hand_derivative() {
        // f = 1/(1+x²) at x=1: f' = -2x/(1+x²)² = -0.5, f'' = (6x²-2)/(1+x²)³ = 0.5
        let x = seeded(1.0);
        let f = 1.0 / (1.0 + x * x);
        assert!((f.e1 + 0.5).abs() < 1e-15);
        assert!((f.e12 - 0.5).abs() < 1e-15);
    }
}
