use nalgebra::DMatrix;
use num_complex::Complex64;

use super::vielbein::Vielbein;
use crate::field::{Point, Signature};
use crate::linalg::{self, CMatrix, I};
use crate::{Error, Result};

fn pauli() -> [CMatrix; 4] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    [
        DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        DMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Flat gammas `γ_a` with `{γ_a, γ_b} = 2 η_ab I`, for even `n`.
///
/// Built as Pauli strings: `γ_{2k} = Z⊗…⊗Z⊗X⊗1⊗…`, `γ_{2k+1} = Z⊗…⊗Z⊗Y⊗1⊗…`;
/// entries with `η_a = −1` are multiplied by `i`.
pub fn clifford_basis(signature: &Signature) -> Result<Vec<CMatrix>> {
    let n = signature.dim();
    if n % 2 != 0 {
        return Err(Error::Unsupported(format!("Dirac matrices need even dimension, got {n}")));
    }
    let [id, x, y, z] = pauli();
    let half = n / 2;
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let k = a / 2;
        let mut m = linalg::identity(1);
        for site in 0..half {
            let f = if site < k {
                &z
            } else if site == k {
                if a % 2 == 0 { &x } else { &y }
            } else {
                &id
            };
            m = linalg::kron(&m, f);
        }
        if signature.get(a) < 0.0 {
            m *= I;
        }
        out.push(m);
    }
    Ok(out)
}

/// `σ_ab = (i/2)[γ_a, γ_b]`, stored at `a·n + b`.
pub fn sigma_matrices(flat: &[CMatrix]) -> Vec<CMatrix> {
    let n = flat.len();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(linalg::commutator(&flat[a], &flat[b]) * (I * 0.5));
        }
    }
    out
}

/// Lorentz generators `Σ_ab = ¼[γ_a, γ_b]`, stored at `a·n + b`.
pub fn spinor_generators(flat: &[CMatrix]) -> Vec<CMatrix> {
    let n = flat.len();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(linalg::commutator(&flat[a], &flat[b]) * Complex64::new(0.25, 0.0));
        }
    }
    out
}

/// `σ² = σ^{ab}σ_ab` as a multiple of the identity, `Tr(Σ σ^{ab}σ_ab)/dim`.
pub fn sigma_squared(signature: &Signature) -> Result<f64> {
    let flat = clifford_basis(signature)?;
    let n = flat.len();
    let sig = sigma_matrices(&flat);
    let dim = flat[0].nrows();
    let mut acc = CMatrix::zeros(dim, dim);
    for a in 0..n {
        for b in 0..n {
            let s = &sig[a * n + b];
            acc += s * s * Complex64::new(signature.get(a) * signature.get(b), 0.0);
        }
    }
    Ok(linalg::trace(&acc).re / dim as f64)
}

/// Curved Dirac matrices `Γ^μ = E^μ_a γ^a` at a point.
#[derive(Clone, Debug)]
pub struct DiracMatrices {
    pub gammas: Vec<CMatrix>,
    /// `γ_μν` at the point.
    pub metric: DMatrix<f64>,
    /// `γ^μν` at the point.
    pub metric_inv: DMatrix<f64>,
}

pub fn dirac_matrices(e: &Vielbein, p: &Point) -> Result<DiracMatrices> {
    let sig = e.signature();
    let flat = clifford_basis(sig)?;
    let n = e.dim();
    let fp = e.at(p)?;
    let eta = sig.signs();
    let dim = flat[0].nrows();
    let mut gammas = Vec::with_capacity(n);
    for mu in 0..n {
        let mut g = CMatrix::zeros(dim, dim);
        for a in 0..n {
            g += &flat[a] * Complex64::new(fp.inv[(mu, a)] * eta[a], 0.0);
        }
        gammas.push(g);
    }
    let metric = DMatrix::from_fn(n, n, |m, v| (0..n).map(|a| eta[a] * fp.e[(a, m)] * fp.e[(a, v)]).sum::<f64>());
    let metric_inv = DMatrix::from_fn(n, n, |m, v| (0..n).map(|a| eta[a] * fp.inv[(m, a)] * fp.inv[(v, a)]).sum::<f64>());
    Ok(DiracMatrices { gammas, metric, metric_inv })
}

impl DiracMatrices {
    pub fn anticommutator(&self, mu: usize, nu: usize) -> CMatrix {
        linalg::anticommutator(&self.gammas[mu], &self.gammas[nu])
    }

    fn residual_against(&self, target: impl Fn(usize, usize) -> f64) -> f64 {
        let n = self.gammas.len();
        let dim = self.gammas[0].nrows();
        let mut worst: f64 = 0.0;
        for mu in 0..n {
            for nu in mu..n {
                let want = linalg::identity(dim) * Complex64::new(target(mu, nu), 0.0);
                worst = worst.max(linalg::max_abs(&(self.anticommutator(mu, nu) - want)));
            }
        }
        worst
    }

    /// Largest deviation of `{Γ^μ, Γ^ν}` from `2γ^μν I`.
    pub fn clifford_residual(&self) -> f64 {
        self.residual_against(|m, v| 2.0 * self.metric_inv[(m, v)])
    }

    /// Largest deviation of `{Γ^μ, Γ^ν}` from `γ_μν I`, reported for comparison.
    pub fn literal_residual(&self) -> f64 {
        self.residual_against(|m, v| self.metric[(m, v)])
    }
}
