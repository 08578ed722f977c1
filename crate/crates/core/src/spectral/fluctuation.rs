//! Inner fluctuations `Ω¹_D`, the fluctuated operator and unimodularity.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::triple::FiniteTriple;
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// `A = Σ a_i [D, b_i]` with the pairs it came from.
#[derive(Clone, Debug)]
pub struct FluctuationElement {
    pub pairs: Vec<(CMatrix, CMatrix)>,
    pub a: CMatrix,
}

impl FluctuationElement {
    /// `½(A + A†)`.
    pub fn hermitian(&self) -> CMatrix {
        (&self.a + linalg::dagger(&self.a)) * Complex64::new(0.5, 0.0)
    }
}

pub fn inner_fluctuations(t: &FiniteTriple, pairs: Vec<(CMatrix, CMatrix)>) -> Result<FluctuationElement> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("inner fluctuation needs at least one pair".into()));
    }
    let mut a = CMatrix::zeros(t.dim, t.dim);
    for (x, y) in &pairs {
        if x.shape() != (t.dim, t.dim) || y.shape() != (t.dim, t.dim) {
            return Err(Error::DimensionMismatch { left: x.nrows().max(y.nrows()), right: t.dim });
        }
        a += x * linalg::commutator(&t.dirac, y);
    }
    Ok(FluctuationElement { pairs, a })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Use `½(A + A†)`.
    Hermitian,
    Raw,
}

/// `D′ = D + A + JAJ⁻¹`.
pub fn fluctuate(t: &FiniteTriple, a: &FluctuationElement, projection: Projection) -> Result<FiniteTriple> {
    let j = t.real.as_ref().ok_or_else(|| Error::MissingStructure("fluctuate needs a real structure J".into()))?;
    let am = match projection {
        Projection::Hermitian => a.hermitian(),
        Projection::Raw => a.a.clone(),
    };
    let d = &t.dirac + &am + j.conjugate(&am);
    let mut out = t.with_dirac(d)?;
    out.name = format!("{}-fluctuated", t.name);
    Ok(out)
}

/// `A^u = u A u† + u [D, u†]`.
pub fn gauge_transform_fluctuation(t: &FiniteTriple, a: &CMatrix, u: &CMatrix) -> CMatrix {
    let ud = linalg::dagger(u);
    u * a * &ud + u * linalg::commutator(&t.dirac, &ud)
}

/// `U = u J u J⁻¹`.
pub fn gauge_unitary(t: &FiniteTriple, u: &CMatrix) -> Result<CMatrix> {
    let j = t.real.as_ref().ok_or_else(|| Error::MissingStructure("gauge unitary needs J".into()))?;
    Ok(u * j.conjugate(u))
}

/// Span of `a_i [D, b_j]` over all generator pairs.
#[derive(Clone, Debug)]
pub struct OneFormSpan {
    /// Orthonormal real basis, each a flattened `(re, im)` vector of length `2·dim²`.
    pub basis: Vec<Vec<f64>>,
    /// Dimension over ℂ of the complex span.
    pub complex_rank: usize,
    pub dim: usize,
}

fn flatten_real(m: &CMatrix) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * m.len());
    for z in m.iter() {
        v.push(z.re);
        v.push(z.im);
    }
    v
}

fn rank_of(columns: &DMatrix<f64>, tol: f64) -> (usize, Option<DMatrix<f64>>) {
    if columns.ncols() == 0 {
        return (0, None);
    }
    let svd = columns.clone().svd(true, false);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol * smax.max(1.0)).collect();
    idx.sort_unstable();
    let u = svd.u.expect("left singular vectors requested");
    let cols: Vec<_> = idx.iter().map(|&i| u.column(i).into_owned()).collect();
    if cols.is_empty() {
        return (0, None);
    }
    (cols.len(), Some(DMatrix::from_columns(&cols)))
}

/// Brute-force sweep of `Ω¹_D` over the generator basis.
pub fn one_form_span(t: &FiniteTriple) -> OneFormSpan {
    let mut cols = Vec::new();
    let mut complex_cols = Vec::new();
    for a in &t.generators {
        for b in &t.generators {
            let w = a * linalg::commutator(&t.dirac, b);
            cols.push(nalgebra::DVector::from_vec(flatten_real(&w)));
            // complex span: append i·w as well
            complex_cols.push(nalgebra::DVector::from_vec(flatten_real(&w)));
            complex_cols.push(nalgebra::DVector::from_vec(flatten_real(&(w * linalg::I))));
        }
    }
    let tol = 1e-10;
    let basis = if cols.is_empty() {
        Vec::new()
    } else {
        match rank_of(&DMatrix::from_columns(&cols), tol).1 {
            Some(u) => u.column_iter().map(|c| c.iter().copied().collect()).collect(),
            None => Vec::new(),
        }
    };
    let real_rank_complex = if complex_cols.is_empty() { 0 } else { rank_of(&DMatrix::from_columns(&complex_cols), tol).0 };
    OneFormSpan { basis, complex_rank: real_rank_complex / 2, dim: t.dim }
}

impl OneFormSpan {
    pub fn real_rank(&self) -> usize {
        self.basis.len()
    }

    /// Distance of `m` from the real span.
    pub fn residual(&self, m: &CMatrix) -> f64 {
        let v = flatten_real(m);
        let mut r = v.clone();
        for b in &self.basis {
            let c: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest residual of `a ω` over generators `a` and basis one-forms `ω`.
    pub fn left_closure_residual(&self, t: &FiniteTriple) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for b in &self.basis {
            let w = CMatrix::from_fn(n, n, |i, j| {
                let k = 2 * (j * n + i);
                Complex64::new(b[k], b[k + 1])
            });
            for a in &t.generators {
                worst = worst.max(self.residual(&(a * &w)));
            }
        }
        worst
    }
}

/// `A′ = A − (Tr A / dim) I`.
pub fn unimodular_projection(a: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::Shape("unimodular projection needs a non-empty square matrix".into()));
    }
    let n = a.nrows();
    Ok(a - linalg::identity(n) * (linalg::trace(a) / n as f64))
}

/// `Λ ⊕ V` with `Tr V + Λ = 0` written as `V = −V′ − ⅓Λ I₃`.
#[derive(Clone, Debug)]
pub struct UnimodularSplit {
    pub lambda: Complex64,
    pub v: CMatrix,
    /// Traceless part, `V′ = −V − ⅓Λ I₃`.
    pub v_prime: CMatrix,
    /// Largest entry outside the `1 ⊕ 3` block pattern.
    pub off_block: f64,
    /// `|Tr V + Λ|`.
    pub trace_residual: f64,
}

/// Decompose a 4×4 matrix shaped `Λ ⊕ V`, projected to be unimodular first.
pub fn split_u1_u3(a: &CMatrix) -> Result<UnimodularSplit> {
    if a.shape() != (4, 4) {
        return Err(Error::Shape(format!("expected a 4×4 Λ ⊕ V block, got {:?}", a.shape())));
    }
    let p = unimodular_projection(a)?;
    let mut off_block = 0.0f64;
    for i in 1..4 {
        off_block = off_block.max(p[(0, i)].norm()).max(p[(i, 0)].norm());
    }
    let lambda = p[(0, 0)];
    let v = p.view((1, 1), (3, 3)).into_owned();
    let v_prime = -&v - linalg::identity(3) * (lambda / 3.0);
    let trace_residual = (linalg::trace(&v) + lambda).norm();
    Ok(UnimodularSplit { lambda, v, v_prime, off_block, trace_residual })
}

/// Eigenvalues of a general complex matrix from its Schur form.
pub fn spectrum(m: &CMatrix) -> Vec<Complex64> {
    let (_, t) = m.clone().schur().unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}
