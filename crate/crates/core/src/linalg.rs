//! Small dense linear-algebra helpers shared by the geometry and spectral layers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Singularity threshold: `|det| < 1e-13 · (max row norm)^n`.
pub fn singularity_scale(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows() as i32;
    let row_norm = m.row_iter().map(|r| r.norm()).fold(0.0, f64::max);
    1e-13 * row_norm.powi(n)
}

/// LU determinant with the singularity policy applied.
pub fn checked_det(m: &DMatrix<f64>) -> Result<f64> {
    let det = m.clone().lu().determinant();
    let scale = singularity_scale(m);
    if !det.is_finite() || det.abs() < scale || scale == 0.0 {
        return Err(Error::SingularMatrix { det, threshold: scale });
    }
    Ok(det)
}

pub fn checked_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let det = checked_det(m)?;
    m.clone()
        .lu()
        .try_inverse()
        .ok_or(Error::SingularMatrix { det, threshold: singularity_scale(m) })
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    max_abs(&(a - a.adjoint()))
}

pub fn anti_hermiticity_residual(a: &CMatrix) -> f64 {
    max_abs(&(a + a.adjoint()))
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[&CMatrix]) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let (mut r, mut cc) = (0, 0);
    for b in blocks {
        out.view_mut((r, cc), (b.nrows(), b.ncols())).copy_from(b);
        r += b.nrows();
        cc += b.ncols();
    }
    out
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_policy_rejects_rank_deficient() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(checked_det(&m).is_err());
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!((checked_det(&m).unwrap() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn direct_sum_places_blocks() {
        let a = identity(1) * c(2.0);
        let b = identity(2) * I;
        let s = direct_sum(&[&a, &b]);
        assert_eq!(s.nrows(), 3);
        assert_eq!(s[(0, 0)], c(2.0));
        assert_eq!(s[(2, 2)], I);
        assert_eq!(s[(0, 2)], c(0.0));
    }
}
