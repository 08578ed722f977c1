//! Standard-Model gauge and Higgs fields and the assembled connection.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cdual::{CDual, DualMatrix};
use super::generators;
use super::matrix::{FieldStrength, MatrixConnection};
use crate::dual::HyperDual;
use crate::field::{ChartField, Point};
use crate::geometry::{self, Vielbein};
use crate::linalg::{self, CMatrix, I};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Couplings {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

/// Hypercharge `B_μ` (shape `[n]`), weak `W^a_μ` (`[3, n]`) and gluon
/// `A^a_μ` (`[8, n]`) potentials.
#[derive(Clone, Debug)]
pub struct SmGauge {
    pub b: ChartField,
    pub w: ChartField,
    pub g: ChartField,
    pub couplings: Couplings,
}

/// Which pieces of the assembled gauge block to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeSector {
    /// `Λ_μ = (i g1/2) B_μ`, 1×1.
    Lambda,
    /// `Q_μ = g2 W^a_μ t_a`, 2×2.
    Q,
    /// `V'_μ = g3 A^a_μ t_a`, 3×3.
    VPrime,
    /// `V_μ = −V'_μ − (1/3) Λ_μ I₃`, 3×3.
    V,
    /// `Λ ⊕ Q ⊕ V`, 6×6.
    Full,
}

/// Field-strength components at a point, each stored `[μ·n + ν]`.
#[derive(Clone, Debug)]
pub struct GaugeComponents {
    pub n: usize,
    pub b: Vec<f64>,
    pub w: Vec<Vec<f64>>,
    pub g: Vec<Vec<f64>>,
}

fn check_shape(f: &ChartField, shape: &[usize], what: &str) -> Result<()> {
    if f.shape() != shape {
        return Err(Error::Shape(format!("{what} must have shape {shape:?}, got {:?}", f.shape())));
    }
    Ok(())
}

impl SmGauge {
    pub fn new(b: ChartField, w: ChartField, g: ChartField, couplings: Couplings) -> Result<Self> {
        let n = b.dim();
        check_shape(&b, &[n], "B")?;
        check_shape(&w, &[3, n], "W")?;
        check_shape(&g, &[8, n], "gluon field")?;
        if w.dim() != n || g.dim() != n {
            return Err(Error::DimensionMismatch { left: w.dim().max(g.dim()), right: n });
        }
        for (name, v) in [("g1", couplings.g1), ("g2", couplings.g2), ("g3", couplings.g3)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("coupling {name} must be positive, got {v}")));
            }
        }
        Ok(Self { b, w, g, couplings })
    }

    pub fn zero(n: usize, couplings: Couplings) -> Result<Self> {
        let z = |shape: Vec<usize>| {
            let len = shape.iter().product();
            let slots = vec![crate::Slot::internal(); shape.len()];
            ChartField::constant(n, shape, slots, vec![0.0; len])
        };
        Self::new(z(vec![n]), z(vec![3, n]), z(vec![8, n]), couplings)
    }

    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    fn sector_dual(&self, x: &[HyperDual], sector: GaugeSector) -> Vec<DualMatrix> {
        let n = self.dim();
        let Couplings { g1, g2, g3 } = self.couplings;
        let (bv, wv, gv) = (self.b.eval_dual(x), self.w.eval_dual(x), self.g.eval_dual(x));
        let su2 = generators::su2();
        let su3 = generators::su3();
        (0..n)
            .map(|mu| {
                let lam = DualMatrix { n: 1, data: vec![CDual::new(HyperDual::ZERO, bv[mu] * (0.5 * g1))] };
                let q = || {
                    (0..3).fold(DualMatrix::zeros(2), |acc, a| {
                        acc.add(&DualMatrix::scaled_constant(&su2[a], wv[a * n + mu] * g2))
                    })
                };
                let vp = || {
                    (0..8).fold(DualMatrix::zeros(3), |acc, a| {
                        acc.add(&DualMatrix::scaled_constant(&su3[a], gv[a * n + mu] * g3))
                    })
                };
                let v = || {
                    let mut third = DualMatrix::zeros(3);
                    for i in 0..3 {
                        third.set(i, i, lam.get(0, 0).scale(HyperDual::constant(1.0 / 3.0)));
                    }
                    DualMatrix::zeros(3).sub(&vp()).sub(&third)
                };
                match sector {
                    GaugeSector::Lambda => lam.clone(),
                    GaugeSector::Q => q(),
                    GaugeSector::VPrime => vp(),
                    GaugeSector::V => v(),
                    GaugeSector::Full => DualMatrix::direct_sum(&[&lam, &q(), &v()]),
                }
            })
            .collect()
    }

    /// One sector of the gauge connection as a matrix one-form.
    pub fn connection(&self, sector: GaugeSector) -> MatrixConnection {
        let d = match sector {
            GaugeSector::Lambda => 1,
            GaugeSector::Q => 2,
            GaugeSector::VPrime | GaugeSector::V => 3,
            GaugeSector::Full => 6,
        };
        let this = self.clone();
        MatrixConnection::from_fn(self.dim(), d, move |x| this.sector_dual(x, sector))
    }

    /// Component field strengths:
    /// `B_μν = ∂_μB_ν − ∂_νB_μ`,
    /// `W^c_μν = ∂_μW^c_ν − ∂_νW^c_μ + g2 f_abc W^a_μ W^b_ν`,
    /// `G^c_μν = ∂_μA^c_ν − ∂_νA^c_μ − g3 f_abc A^a_μ A^b_ν`.
    ///
    /// The gluon sign follows from `V = −V' − …` being the connection that
    /// acts on colour.
    pub fn components(&self, p: &Point) -> Result<GaugeComponents> {
        let n = self.dim();
        let Couplings { g2, g3, .. } = self.couplings;
        let jb = self.b.jet(p, 1)?;
        let b = (0..n * n).map(|k| jb.d1(k / n, k % n) - jb.d1(k % n, k / n)).collect();
        let nonabelian = |field: &ChartField, basis: &[CMatrix], coupling: f64| -> Result<Vec<Vec<f64>>> {
            let jet = field.jet(p, 1)?;
            let k = basis.len();
            let f = generators::structure_constants(basis);
            let a = |c: usize, mu: usize| jet.value[c * n + mu];
            let mut out = vec![vec![0.0; n * n]; k];
            for (c, oc) in out.iter_mut().enumerate() {
                for mu in 0..n {
                    for nu in 0..n {
                        let mut s = jet.d1(mu, c * n + nu) - jet.d1(nu, c * n + mu);
                        for i in 0..k {
                            for j in 0..k {
                                let fijc = f[(i * k + j) * k + c];
                                if fijc != 0.0 {
                                    s += coupling * fijc * a(i, mu) * a(j, nu);
                                }
                            }
                        }
                        oc[mu * n + nu] = s;
                    }
                }
            }
            Ok(out)
        };
        let w = nonabelian(&self.w, &generators::su2(), g2)?;
        let g = nonabelian(&self.g, &generators::su3(), -g3)?;
        Ok(GaugeComponents { n, b, w, g })
    }
}

impl GaugeComponents {
    fn square(&self, f: &[f64], ginv: &DMatrix<f64>) -> f64 {
        two_form_square(self.n, f, f, ginv)
    }

    /// `B_μν B^μν`.
    pub fn b_squared(&self, ginv: &DMatrix<f64>) -> f64 {
        self.square(&self.b, ginv)
    }

    /// `Σ_a W^a_μν W^{aμν}`.
    pub fn w_squared(&self, ginv: &DMatrix<f64>) -> f64 {
        self.w.iter().map(|f| self.square(f, ginv)).sum()
    }

    /// `Σ_a G^a_μν G^{aμν}`.
    pub fn g_squared(&self, ginv: &DMatrix<f64>) -> f64 {
        self.g.iter().map(|f| self.square(f, ginv)).sum()
    }

    /// `Tr(W_μν W^μν)` with `W_μν = W^a_μν σ_a`, i.e. `2 Σ_a W^a·W^a`.
    pub fn w_trace(&self, ginv: &DMatrix<f64>) -> f64 {
        2.0 * self.w_squared(ginv)
    }

    /// `Tr(G_μν G^μν)` with `G_μν = G^a_μν λ_a`, i.e. `2 Σ_a G^a·G^a`.
    pub fn g_trace(&self, ginv: &DMatrix<f64>) -> f64 {
        2.0 * self.g_squared(ginv)
    }
}

/// `F_μν K_αβ γ^{μα} γ^{νβ}` for two-forms stored `[μ·n + ν]`.
pub fn two_form_square(n: usize, f: &[f64], k: &[f64], ginv: &DMatrix<f64>) -> f64 {
    let mut s = 0.0;
    for mu in 0..n {
        for nu in 0..n {
            let fv = f[mu * n + nu];
            if fv == 0.0 {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    s += fv * k[a * n + b] * ginv[(mu, a)] * ginv[(nu, b)];
                }
            }
        }
    }
    s
}

/// Quaternion-valued Higgs field `H = [[x, y], [−y*, x*]]` from four real
/// components `(Re x, Im x, Re y, Im y)`.
#[derive(Clone, Debug)]
pub struct HiggsField {
    pub h: ChartField,
    pub c: f64,
}

pub fn quaternion(v: &[f64]) -> CMatrix {
    let x = Complex64::new(v[0], v[1]);
    let y = Complex64::new(v[2], v[3]);
    CMatrix::from_row_slice(2, 2, &[x, y, -y.conj(), x.conj()])
}

/// Largest violation of the form `[[x, y], [−y*, x*]]`.
pub fn quaternion_residual(q: &CMatrix) -> f64 {
    let a = (q[(1, 1)] - q[(0, 0)].conj()).norm();
    let b = (q[(1, 0)] + q[(0, 1)].conj()).norm();
    a.max(b)
}

impl HiggsField {
    pub fn new(h: ChartField, c: f64) -> Result<Self> {
        check_shape(&h, &[4], "Higgs field")?;
        if !c.is_finite() {
            return Err(Error::NonFinite("Higgs vacuum constant".into()));
        }
        Ok(Self { h, c })
    }

    pub fn zero(n: usize, c: f64) -> Result<Self> {
        Self::new(ChartField::constant(n, vec![4], vec![crate::Slot::internal()], vec![0.0; 4]), c)
    }

    pub fn at(&self, p: &Point) -> Result<CMatrix> {
        Ok(quaternion(&self.h.value(p)?))
    }

    /// `|H|² = ½ Tr(H†H)`.
    pub fn norm_squared(&self, p: &Point) -> Result<f64> {
        let v = self.h.value(p)?;
        Ok(v.iter().map(|c| c * c).sum())
    }
}

/// `D_μH = ∂_μH − (i g2/2) W^a_μ σ_a H − (i g1/2) B_μ H σ_3`, one 2×2 matrix per `μ`.
///
/// Hypercharge acts from the right so the result stays quaternionic; on the
/// first column (the doublet) it is the usual `−(i g1/2) B_μ` phase.
pub fn higgs_covariant_derivative(gauge: &SmGauge, higgs: &HiggsField, p: &Point) -> Result<Vec<CMatrix>> {
    let n = gauge.dim();
    if higgs.h.dim() != n {
        return Err(Error::DimensionMismatch { left: higgs.h.dim(), right: n });
    }
    let Couplings { g1, g2, .. } = gauge.couplings;
    let jet = higgs.h.jet(p, 1)?;
    let h = quaternion(&jet.value);
    let b = gauge.b.value(p)?;
    let w = gauge.w.value(p)?;
    let sig = generators::pauli();
    let mut out = Vec::with_capacity(n);
    for mu in 0..n {
        let dh = quaternion(&(0..4).map(|c| jet.d1(mu, c)).collect::<Vec<_>>());
        let mut wm = CMatrix::zeros(2, 2);
        for a in 0..3 {
            wm += &sig[a] * Complex64::new(w[a * n + mu], 0.0);
        }
        let term_w = wm * &h * (I * (0.5 * g2));
        let term_b = &h * &sig[2] * (I * (0.5 * g1 * b[mu]));
        out.push(dh - term_w - term_b);
    }
    Ok(out)
}

/// Higgs kinetic scalar `γ^μν ½ Re Tr(D_μH† D_νH)`.
pub fn higgs_kinetic(dh: &[CMatrix], ginv: &DMatrix<f64>) -> f64 {
    let n = dh.len();
    let mut s = 0.0;
    for mu in 0..n {
        for nu in 0..n {
            let w = ginv[(mu, nu)];
            if w != 0.0 {
                s += w * 0.5 * linalg::trace(&(linalg::dagger(&dh[mu]) * &dh[nu])).re;
            }
        }
    }
    s
}

/// The generalized derivative `𝒟 = ∂ + ½ω ⊕ A ⊕ (1/α)Φ⊗χ`, kept block by block.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    pub frame: Vielbein,
    pub gauge: SmGauge,
    pub higgs: HiggsField,
    pub alpha: f64,
    pub chi: CMatrix,
}

/// Blocks of `ℱ = d𝒜 + 𝒜∧𝒜` at a point.
#[derive(Clone, Debug)]
pub struct CurvatureForm {
    pub n: usize,
    /// `R^{ab}_μν` stored `[a][b][μ][ν]`.
    pub frame_curvature: Vec<f64>,
    pub frame_signs: Vec<f64>,
    /// `½ R^{ab}_μν Σ_ab` (`Σ_ab = ¼[γ_a, γ_b]`); absent in odd dimension.
    pub gravity: Option<Vec<CMatrix>>,
    pub gauge: FieldStrength,
    pub components: GaugeComponents,
    /// `D_μH`.
    pub higgs_kinetic: Vec<CMatrix>,
    /// `|H|²`.
    pub higgs_norm_squared: f64,
    /// `(|H|² − c²)/α²`.
    pub higgs_potential: f64,
    /// `γ_μν` and `γ^μν` at the point.
    pub metric: DMatrix<f64>,
    pub metric_inv: DMatrix<f64>,
    pub couplings: Couplings,
    pub alpha: f64,
    pub c: f64,
    /// `η = ⟨χ, χ⟩`.
    pub eta: f64,
}

impl ConnectionForm {
    pub fn new(frame: Vielbein, gauge: SmGauge, higgs: HiggsField, alpha: f64, chi: CMatrix) -> Result<Self> {
        let n = frame.dim();
        if gauge.dim() != n || higgs.h.dim() != n {
            return Err(Error::DimensionMismatch { left: gauge.dim().max(higgs.h.dim()), right: n });
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("α must be positive, got {alpha}")));
        }
        if chi.nrows() != chi.ncols() || chi.nrows() == 0 {
            return Err(Error::Shape("χ must be a non-empty square matrix".into()));
        }
        Ok(Self { frame, gauge, higgs, alpha, chi })
    }

    /// Default `χ = σ₁`, giving `η = 2`.
    pub fn default_chi() -> CMatrix {
        generators::pauli()[0].clone()
    }

    pub fn eta(&self) -> f64 {
        linalg::trace(&(linalg::dagger(&self.chi) * &self.chi)).re
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Spinor block `½ω_μ` with `ω_μ = ω^{ab}_μ Σ_ab`.
    pub fn spin_block(&self, p: &Point) -> Result<Vec<CMatrix>> {
        let n = self.dim();
        let flat = geometry::clifford_basis(self.frame.signature())?;
        let gens = geometry::spinor_generators(&flat);
        let w = geometry::spin_connection(&self.frame, p)?;
        let dim = flat[0].nrows();
        Ok((0..n)
            .map(|mu| {
                let mut m = CMatrix::zeros(dim, dim);
                for a in 0..n {
                    for b in 0..n {
                        m += &gens[a * n + b] * Complex64::new(0.5 * w.get(a, b, mu), 0.0);
                    }
                }
                m
            })
            .collect())
    }

    pub fn gauge_block(&self, p: &Point) -> Result<Vec<CMatrix>> {
        self.gauge.connection(GaugeSector::Full).at(p)
    }

    /// `Φ = [[c i, H], [H†, c i]]` (4×4).
    pub fn phi(&self, p: &Point) -> Result<CMatrix> {
        let h = self.higgs.at(p)?;
        let ci = I * self.higgs.c;
        let mut m = CMatrix::zeros(4, 4);
        for i in 0..2 {
            m[(i, i)] = ci;
            m[(i + 2, i + 2)] = ci;
            for j in 0..2 {
                m[(i, j + 2)] = h[(i, j)];
                m[(i + 2, j)] = h[(j, i)].conj();
            }
        }
        Ok(m)
    }

    /// `(1/α) Φ ⊗ χ`.
    pub fn higgs_block(&self, p: &Point) -> Result<CMatrix> {
        Ok(linalg::kron(&self.phi(p)?, &self.chi) / Complex64::new(self.alpha, 0.0))
    }

    /// Largest `|Tr A_μ|` over the gauge block.
    pub fn unimodularity_residual(&self, p: &Point) -> Result<f64> {
        Ok(self.gauge_block(p)?.iter().map(|a| linalg::trace(a).norm()).fold(0.0, f64::max))
    }

    pub fn curvature(&self, p: &Point) -> Result<CurvatureForm> {
        let n = self.dim();
        let signs = self.frame.signature().signs().to_vec();
        let metric = geometry::metric_from_vielbein(&self.frame)?;
        let cs = metric.riemann(p)?;
        let fp = self.frame.at(p)?;
        // R^{ab}_μν = E^a_ρ R^ρ_{σμν} E^σ_c η^{cb}
        let mut frame_curvature = vec![0.0; n.pow(4)];
        for a in 0..n {
            for b in 0..n {
                for mu in 0..n {
                    for nu in 0..n {
                        let mut s = 0.0;
                        for r in 0..n {
                            for sg in 0..n {
                                s += fp.e[(a, r)] * cs.riemann_at(r, sg, mu, nu) * fp.inv[(sg, b)];
                            }
                        }
                        frame_curvature[((a * n + b) * n + mu) * n + nu] = s * signs[b];
                    }
                }
            }
        }
        let gravity = if n % 2 == 0 {
            let flat = geometry::clifford_basis(self.frame.signature())?;
            let gens = geometry::spinor_generators(&flat);
            let dim = flat[0].nrows();
            let mut blocks = Vec::with_capacity(n * n);
            for mu in 0..n {
                for nu in 0..n {
                    let mut m = CMatrix::zeros(dim, dim);
                    for a in 0..n {
                        for b in 0..n {
                            let r = frame_curvature[((a * n + b) * n + mu) * n + nu];
                            m += &gens[a * n + b] * Complex64::new(0.5 * r, 0.0);
                        }
                    }
                    blocks.push(m);
                }
            }
            Some(blocks)
        } else {
            None
        };
        let gauge = self.gauge.connection(GaugeSector::Full).curvature(p)?;
        let components = self.gauge.components(p)?;
        let higgs_kinetic = higgs_covariant_derivative(&self.gauge, &self.higgs, p)?;
        let h2 = self.higgs.norm_squared(p)?;
        let c = self.higgs.c;
        Ok(CurvatureForm {
            n,
            frame_curvature,
            frame_signs: signs,
            gravity,
            gauge,
            components,
            higgs_kinetic,
            higgs_norm_squared: h2,
            higgs_potential: (h2 - c * c) / (self.alpha * self.alpha),
            metric: cs.metric.g.clone(),
            metric_inv: cs.metric.inv.clone(),
            couplings: self.gauge.couplings,
            alpha: self.alpha,
            c,
            eta: self.eta(),
        })
    }
}

impl CurvatureForm {
    /// `R^{ab}_μν R_ab^μν` with frame indices lowered by `η` and coordinate
    /// indices raised by `ginv`.
    pub fn curvature_square(&self, ginv: &DMatrix<f64>) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                let base = (a * n + b) * n * n;
                let f = &self.frame_curvature[base..base + n * n];
                s += self.frame_signs[a] * self.frame_signs[b] * two_form_square(n, f, f, ginv);
            }
        }
        s
    }
}
