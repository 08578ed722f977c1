//! `𝒜_F = ℂ ⊕ ℍ ⊕ M₃(ℂ)`, its representation on the lepton and quark
//! spaces, the Yukawa operator `D_Y`, and the toy two-point triples.

use num_complex::Complex64;

use super::triple::{FiniteTriple, RealStructure, Signs};
use crate::linalg::{self, CMatrix, I};
use crate::{Error, Result};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(λ, q, m)` with `q = [[x, y], [−y*, x*]]`.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub lambda: Complex64,
    pub q: CMatrix,
    pub m: CMatrix,
}

impl AlgebraElement {
    pub fn new(lambda: Complex64, q: CMatrix, m: CMatrix) -> Result<Self> {
        if q.shape() != (2, 2) || m.shape() != (3, 3) {
            return Err(Error::Shape("algebra element needs q 2×2 and m 3×3".into()));
        }
        if crate::connection::quaternion_residual(&q) > 1e-12 {
            return Err(Error::InvalidParameter("q is not of quaternion form".into()));
        }
        Ok(Self { lambda, q, m })
    }

    pub fn from_parts(lambda: Complex64, x: Complex64, y: Complex64, m: CMatrix) -> Result<Self> {
        Self::new(lambda, CMatrix::from_row_slice(2, 2, &[x, y, -y.conj(), x.conj()]), m)
    }

    pub fn product(&self, o: &Self) -> Self {
        Self { lambda: self.lambda * o.lambda, q: &self.q * &o.q, m: &self.m * &o.m }
    }

    /// Real basis: `1, i` in ℂ; `1, iσ₃, iσ₂, iσ₁` in ℍ; `E_jk, iE_jk` in M₃(ℂ).
    pub fn real_basis() -> Vec<Self> {
        let z2 = CMatrix::zeros(2, 2);
        let z3 = CMatrix::zeros(3, 3);
        let zero = Complex64::new(0.0, 0.0);
        let mut out = vec![
            Self { lambda: c(1.0), q: z2.clone(), m: z3.clone() },
            Self { lambda: I, q: z2.clone(), m: z3.clone() },
        ];
        for (x, y) in [(c(1.0), zero), (I, zero), (zero, c(1.0)), (zero, I)] {
            out.push(Self::from_parts(zero, x, y, z3.clone()).expect("quaternion basis"));
        }
        for j in 0..3 {
            for k in 0..3 {
                for s in [c(1.0), I] {
                    let mut m = z3.clone();
                    m[(j, k)] = s;
                    out.push(Self { lambda: zero, q: z2.clone(), m });
                }
            }
        }
        out
    }
}

/// Which part of the Standard-Model finite space is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Leptons,
    Full,
}

/// How the lower-left Yukawa blocks are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YukawaMode {
    /// Lower blocks are the adjoints of the upper blocks; `D_Y` is Hermitian.
    Hermitian,
    /// Lower blocks use the displayed conjugates `(k)*`; Hermitian iff every
    /// `k` is symmetric.
    Literal,
}

#[derive(Clone, Debug)]
pub struct YukawaData {
    pub k_u: CMatrix,
    pub k_d: CMatrix,
    pub k_e: CMatrix,
    pub mode: YukawaMode,
}

impl YukawaData {
    pub fn new(k_u: CMatrix, k_d: CMatrix, k_e: CMatrix, mode: YukawaMode) -> Result<Self> {
        for (name, k) in [("k_u", &k_u), ("k_d", &k_d), ("k_e", &k_e)] {
            if k.shape() != (3, 3) {
                return Err(Error::Shape(format!("{name} must be 3×3, got {:?}", k.shape())));
            }
        }
        Ok(Self { k_u, k_d, k_e, mode })
    }

    pub fn zero() -> Self {
        let z = CMatrix::zeros(3, 3);
        Self { k_u: z.clone(), k_d: z.clone(), k_e: z, mode: YukawaMode::Hermitian }
    }

    fn lower(&self, upper: &CMatrix, k: &CMatrix, selector: &CMatrix) -> CMatrix {
        match self.mode {
            YukawaMode::Hermitian => linalg::dagger(upper),
            YukawaMode::Literal => linalg::kron(&selector.transpose(), &k.map(|z| z.conj())),
        }
    }
}

/// Higgs vacuum direction `v = (0, 1)ᵀ` in doublet space.
fn vacuum() -> CMatrix {
    CMatrix::from_column_slice(2, 1, &[c(0.0), c(1.0)])
}

/// `iσ₂ v = (1, 0)ᵀ`.
fn vacuum_conjugate() -> CMatrix {
    let is2 = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
    is2 * vacuum()
}

fn place(target: &mut CMatrix, r: usize, c0: usize, block: &CMatrix) {
    target.view_mut((r, c0), block.shape()).copy_from(block);
}

/// `Y_ℓ` on `(ℓ_L ⊗ ℂ³_gen, e_R ⊗ ℂ³_gen)`, 9×9.
pub fn lepton_yukawa(y: &YukawaData) -> CMatrix {
    let mut out = CMatrix::zeros(9, 9);
    let v = vacuum();
    let upper = linalg::kron(&v, &y.k_e);
    place(&mut out, 0, 6, &upper);
    place(&mut out, 6, 0, &y.lower(&upper, &y.k_e, &v));
    out
}

/// `Y_q` on `(Q_L ⊗ ℂ³_gen, d_R, u_R)`, 12×12.
pub fn quark_yukawa(y: &YukawaData) -> CMatrix {
    let mut out = CMatrix::zeros(12, 12);
    let (v, vc) = (vacuum(), vacuum_conjugate());
    let ud = linalg::kron(&v, &y.k_d);
    let uu = linalg::kron(&vc, &y.k_u);
    place(&mut out, 0, 6, &ud);
    place(&mut out, 0, 9, &uu);
    place(&mut out, 6, 0, &y.lower(&ud, &y.k_d, &v));
    place(&mut out, 9, 0, &y.lower(&uu, &y.k_u, &vc));
    out
}

/// Dimension bookkeeping of the particle space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorDims {
    pub quarks: usize,
    pub leptons: usize,
    pub particles: usize,
    pub total: usize,
}

/// Assembled Standard-Model finite data.
#[derive(Clone, Debug)]
pub struct SmFinite {
    pub triple: FiniteTriple,
    pub sector: Sector,
    /// `Y = Y_q ⊗ I₃ ⊕ Y_ℓ` (or `Y_ℓ` alone).
    pub y: CMatrix,
    pub y_q: Option<CMatrix>,
    pub y_l: CMatrix,
    /// `D_Y = [[Y, 0], [0, Ȳ]]`.
    pub d_y: CMatrix,
    pub dims: SectorDims,
}

impl SmFinite {
    pub fn hermiticity_residual(&self) -> f64 {
        linalg::hermiticity_residual(&self.d_y)
    }

    /// Largest entry of `D_Y` outside the displayed block pattern.
    pub fn pattern_residual(&self) -> f64 {
        let p = self.dims.particles;
        let mut worst = 0.0f64;
        for i in 0..2 * p {
            for j in 0..2 * p {
                if (i < p) != (j < p) {
                    worst = worst.max(self.d_y[(i, j)].norm());
                }
            }
        }
        let yb = self.y.map(|z| z.conj());
        worst.max(linalg::max_abs(&(self.d_y.view((p, p), (p, p)).into_owned() - yb)))
    }

    /// `π(a)` on the whole Hilbert space.
    pub fn represent(&self, a: &AlgebraElement) -> CMatrix {
        represent(self.sector, a)
    }
}

/// `π(λ, q, m)`: on particles `q` on doublets, `λ̄` on `d_R, e_R`, `λ` on
/// `u_R`; on antiparticles `λ` on leptons and `m` on quark colour.
pub fn represent(sector: Sector, a: &AlgebraElement) -> CMatrix {
    let i3 = linalg::identity(3);
    let lbar = a.lambda.conj();
    let lep = linalg::direct_sum(&[&linalg::kron(&a.q, &i3), &(&i3 * lbar)]);
    let lep_bar = linalg::identity(9) * a.lambda;
    match sector {
        Sector::Leptons => linalg::direct_sum(&[&lep, &lep_bar]),
        Sector::Full => {
            let flavour = linalg::direct_sum(&[&linalg::kron(&a.q, &i3), &(&i3 * lbar), &(&i3 * a.lambda)]);
            let quarks = linalg::kron(&flavour, &i3);
            let quarks_bar = linalg::kron(&linalg::identity(12), &a.m);
            linalg::direct_sum(&[&quarks, &lep, &quarks_bar, &lep_bar])
        }
    }
}

fn grading_particles(sector: Sector) -> CMatrix {
    let lep: Vec<f64> = [[1.0; 6].as_slice(), [-1.0; 3].as_slice()].concat();
    let signs: Vec<f64> = match sector {
        Sector::Leptons => lep,
        Sector::Full => {
            let flav: Vec<f64> = [[1.0; 6].as_slice(), [-1.0; 6].as_slice()].concat();
            let q: Vec<f64> = flav.iter().flat_map(|&s| [s; 3]).collect();
            [q, lep].concat()
        }
    };
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(signs.len(), signs.iter().map(|&s| c(s))))
}

/// Build the finite triple on particles ⊕ antiparticles with
/// `D_F = D_Y`, `γ = γ_P ⊕ (−γ_P)`, `J(ξ, η̄) = (η, ξ̄)`, signs `(1, 1, −1)`.
pub fn build_sm_finite(y: &YukawaData, sector: Sector) -> Result<SmFinite> {
    let y_l = lepton_yukawa(y);
    let (ymat, y_q) = match sector {
        Sector::Leptons => (y_l.clone(), None),
        Sector::Full => {
            let yq = quark_yukawa(y);
            (linalg::direct_sum(&[&linalg::kron(&yq, &linalg::identity(3)), &y_l]), Some(yq))
        }
    };
    let p = ymat.nrows();
    let d_y = linalg::direct_sum(&[&ymat, &ymat.map(|z| z.conj())]);
    let gp = grading_particles(sector);
    let grading = linalg::direct_sum(&[&gp, &(-&gp)]);
    let mut k = CMatrix::zeros(2 * p, 2 * p);
    for i in 0..p {
        k[(i, p + i)] = c(1.0);
        k[(p + i, i)] = c(1.0);
    }
    let basis = AlgebraElement::real_basis();
    let basis: Vec<AlgebraElement> = match sector {
        // M₃(ℂ) acts trivially on leptons
        Sector::Leptons => basis.into_iter().take(6).collect(),
        Sector::Full => basis,
    };
    let generators = basis.iter().map(|a| represent(sector, a)).collect();
    let name = match sector {
        Sector::Leptons => "sm-leptons",
        Sector::Full => "sm-full",
    };
    let triple = FiniteTriple::new(
        name,
        generators,
        d_y.clone(),
        Some(grading),
        Some(RealStructure::new(k)?),
        Some(Signs::new(1.0, 1.0, -1.0)?),
    )?;
    let dims = SectorDims {
        quarks: if sector == Sector::Full { 36 } else { 0 },
        leptons: 9,
        particles: p,
        total: 2 * p,
    };
    Ok(SmFinite { triple, sector, y: ymat, y_q, y_l, d_y, dims })
}

/// `ℋ = ℂ²`, `D = [[0, m], [m, 0]]`, `γ = diag(1, −1)`, `J = σ₁ ∘ conj`,
/// algebra `diag(λ₁, λ₂)`. The first-order condition fails here and is
/// reported without being claimed.
pub fn two_point(m: f64) -> Result<FiniteTriple> {
    let z = c(0.0);
    let e = |i: usize, s: Complex64| {
        let mut d = CMatrix::zeros(2, 2);
        d[(i, i)] = s;
        d
    };
    FiniteTriple::new(
        "two-point",
        vec![e(0, c(1.0)), e(0, I), e(1, c(1.0)), e(1, I)],
        CMatrix::from_row_slice(2, 2, &[z, c(m), c(m), z]),
        Some(CMatrix::from_row_slice(2, 2, &[c(1.0), z, z, c(-1.0)])),
        Some(RealStructure::new(CMatrix::from_row_slice(2, 2, &[z, c(1.0), c(1.0), z]))?),
        Some(Signs::new(1.0, 1.0, -1.0)?),
    )
    .map(|t| t.with_first_order(false))
}

/// Two-point space with antiparticles: `ℋ = ℂ² ⊕ ℂ²`, algebra acting on the
/// first copy, `D = D₂ ⊕ D̄₂`, `γ = γ₂ ⊕ (−γ₂)`, `J` swapping the copies.
pub fn two_point_doubled(m: Complex64) -> Result<FiniteTriple> {
    let z = c(0.0);
    let d2 = CMatrix::from_row_slice(2, 2, &[z, m, m.conj(), z]);
    let g2 = CMatrix::from_row_slice(2, 2, &[c(1.0), z, z, c(-1.0)]);
    let mut k = CMatrix::zeros(4, 4);
    for i in 0..2 {
        k[(i, i + 2)] = c(1.0);
        k[(i + 2, i)] = c(1.0);
    }
    let gens = [(0, c(1.0)), (0, I), (1, c(1.0)), (1, I)]
        .into_iter()
        .map(|(i, s)| {
            let mut a = CMatrix::zeros(4, 4);
            a[(i, i)] = s;
            a
        })
        .collect();
    FiniteTriple::new(
        "two-point-doubled",
        gens,
        linalg::direct_sum(&[&d2, &d2.map(|z| z.conj())]),
        Some(linalg::direct_sum(&[&g2, &(-&g2)])),
        Some(RealStructure::new(k)?),
        Some(Signs::new(1.0, 1.0, -1.0)?),
    )
}
