use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cdual::{CDual, DualMatrix};
use crate::dual::HyperDual;
use crate::field::{ChartField, Jet, Point};
use crate::linalg::{self, CMatrix};
use crate::tensor::Slot;
use crate::{Error, Result};

/// Matrix-valued one-form `A_μ` (`d×d` complex), stored as a real field of
/// shape `[n, d, d, 2]`.
#[derive(Clone, Debug)]
pub struct MatrixConnection {
    field: ChartField,
    d: usize,
}

/// `F_μν` at a point, stored at `μ·n + ν`.
#[derive(Clone, Debug)]
pub struct FieldStrength {
    pub n: usize,
    pub comps: Vec<CMatrix>,
}

fn cm(jet_vals: impl Fn(usize) -> f64, base: usize, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| {
        let k = base + (i * d + j) * 2;
        Complex64::new(jet_vals(k), jet_vals(k + 1))
    })
}

impl MatrixConnection {
    pub fn from_fn(n: usize, d: usize, f: impl Fn(&[HyperDual]) -> Vec<DualMatrix> + Send + Sync + 'static) -> Self {
        let field = ChartField::from_dual(
            n,
            vec![n, d, d, 2],
            vec![Slot::coord_down(), Slot::internal(), Slot::internal(), Slot::internal()],
            move |x| {
                let mats = f(x);
                let mut out = Vec::with_capacity(n * d * d * 2);
                for m in mats.iter().take(n) {
                    m.flatten_into(&mut out);
                }
                out
            },
        );
        Self { field, d }
    }

    pub fn from_field(field: ChartField) -> Result<Self> {
        let s = field.shape().to_vec();
        if s.len() != 4 || s[0] != field.dim() || s[1] != s[2] || s[3] != 2 {
            return Err(Error::Shape(format!("matrix connection needs shape [n, d, d, 2], got {s:?}")));
        }
        Ok(Self { d: s[1], field })
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self::from_fn(n, d, move |_| vec![DualMatrix::zeros(d); n])
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn matrix_dim(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &ChartField {
        &self.field
    }

    fn block(&self) -> usize {
        self.d * self.d * 2
    }

    /// Hyper-dual matrices `A_μ(x)`.
    pub fn eval_dual(&self, x: &[HyperDual]) -> Vec<DualMatrix> {
        let raw = self.field.eval_dual(x);
        let d = self.d;
        (0..self.dim())
            .map(|mu| {
                let base = mu * self.block();
                DualMatrix {
                    n: d,
                    data: (0..d * d).map(|k| CDual::new(raw[base + 2 * k], raw[base + 2 * k + 1])).collect(),
                }
            })
            .collect()
    }

    pub fn at(&self, p: &Point) -> Result<Vec<CMatrix>> {
        let v = self.field.value(p)?;
        Ok((0..self.dim()).map(|mu| cm(|k| v[k], mu * self.block(), self.d)).collect())
    }

    pub fn anti_hermiticity_residual(&self, p: &Point) -> Result<f64> {
        Ok(self.at(p)?.iter().map(linalg::anti_hermiticity_residual).fold(0.0, f64::max))
    }

    fn parts(&self, jet: &Jet) -> (Vec<CMatrix>, Vec<CMatrix>) {
        let n = self.dim();
        let b = self.block();
        let a: Vec<CMatrix> = (0..n).map(|mu| cm(|k| jet.value[k], mu * b, self.d)).collect();
        // da[λ·n + μ] = ∂_λ A_μ
        let mut da = Vec::with_capacity(n * n);
        for l in 0..n {
            for mu in 0..n {
                da.push(cm(|k| jet.d1(l, k), mu * b, self.d));
            }
        }
        (a, da)
    }

    /// `F_μν = ∂_μ A_ν − ∂_ν A_μ + [A_μ, A_ν]`.
    pub fn curvature(&self, p: &Point) -> Result<FieldStrength> {
        let n = self.dim();
        let jet = self.field.jet(p, 1)?;
        let (a, da) = self.parts(&jet);
        let mut comps = Vec::with_capacity(n * n);
        for mu in 0..n {
            for nu in 0..n {
                comps.push(&da[mu * n + nu] - &da[nu * n + mu] + linalg::commutator(&a[mu], &a[nu]));
            }
        }
        Ok(FieldStrength { n, comps })
    }

    /// Largest entry of the cyclic sum `D_λF_μν + D_μF_νλ + D_νF_λμ`.
    pub fn bianchi_residual(&self, p: &Point) -> Result<f64> {
        let n = self.dim();
        let d = self.d;
        let b = self.block();
        let jet = self.field.jet(p, 2)?;
        let (a, da) = self.parts(&jet);
        let dda = |l: usize, m: usize, nu: usize| cm(|k| jet.d2(l, m, k), nu * b, d);
        let f = |mu: usize, nu: usize| &da[mu * n + nu] - &da[nu * n + mu] + linalg::commutator(&a[mu], &a[nu]);
        // D_λ F_μν = ∂_λF_μν + [A_λ, F_μν]
        let df = |l: usize, mu: usize, nu: usize| {
            let dl = dda(l, mu, nu) - dda(l, nu, mu)
                + linalg::commutator(&da[l * n + mu], &a[nu])
                + linalg::commutator(&a[mu], &da[l * n + nu]);
            dl + linalg::commutator(&a[l], &f(mu, nu))
        };
        let mut worst: f64 = 0.0;
        for l in 0..n {
            for mu in l + 1..n {
                for nu in mu + 1..n {
                    let s = df(l, mu, nu) + df(mu, nu, l) + df(nu, l, mu);
                    worst = worst.max(linalg::max_abs(&s));
                }
            }
        }
        Ok(worst)
    }

    /// `A'_μ = u A_μ u⁻¹ + u ∂_μ u⁻¹`.
    pub fn gauge_transform(&self, u: &GaugeTransform) -> Result<MatrixConnection> {
        if u.dim() != self.d {
            return Err(Error::DimensionMismatch { left: u.dim(), right: self.d });
        }
        let this = self.clone();
        let u = u.clone();
        let n = self.dim();
        Ok(Self::from_fn(n, self.d, move |x| {
            let a = this.eval_dual(x);
            let (um, inhom) = u.eval_dual(x);
            let ud = um.dagger();
            a.iter().zip(inhom).map(|(am, h)| um.matmul(am).matmul(&ud).add(&h)).collect()
        }))
    }
}

impl FieldStrength {
    pub fn get(&self, mu: usize, nu: usize) -> &CMatrix {
        &self.comps[mu * self.n + nu]
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..self.n {
            for nu in 0..self.n {
                worst = worst.max(linalg::max_abs(&(self.get(mu, nu) + self.get(nu, mu))));
            }
        }
        worst
    }

    /// `Tr(F_μν F^μν)` with indices raised by `ginv`.
    pub fn trace_square(&self, ginv: &DMatrix<f64>) -> Complex64 {
        let n = self.n;
        let mut s = Complex64::new(0.0, 0.0);
        for mu in 0..n {
            for nu in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let w = ginv[(mu, a)] * ginv[(nu, b)];
                        if w != 0.0 {
                            s += linalg::trace(&(self.get(mu, nu) * self.get(a, b))) * w;
                        }
                    }
                }
            }
        }
        s
    }

    /// `u F u⁻¹` componentwise.
    pub fn conjugated(&self, u: &CMatrix) -> FieldStrength {
        let ui = linalg::dagger(u);
        FieldStrength { n: self.n, comps: self.comps.iter().map(|f| u * f * &ui).collect() }
    }

    pub fn max_abs_diff(&self, o: &FieldStrength) -> f64 {
        self.comps.iter().zip(&o.comps).map(|(a, b)| linalg::max_abs(&(a - b))).fold(0.0, f64::max)
    }
}

/// One factor `exp(θ(x) X)` with `θ(x) = amplitude · sin(k·x + phase)` and
/// constant anti-Hermitian `X`.
#[derive(Clone, Debug)]
pub struct GaugeFactor {
    pub generator: CMatrix,
    pub amplitude: f64,
    pub wave: Vec<f64>,
    pub phase: f64,
}

/// Smooth unitary `u(x) = Π_k exp(θ_k(x) X_k)`.
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    d: usize,
    factors: Vec<(GaugeFactor, CMatrix, Vec<f64>)>,
}

impl GaugeTransform {
    pub fn new(d: usize, factors: Vec<GaugeFactor>) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for f in factors {
            if f.generator.nrows() != d || f.generator.ncols() != d {
                return Err(Error::DimensionMismatch { left: f.generator.nrows(), right: d });
            }
            if linalg::anti_hermiticity_residual(&f.generator) > 1e-12 {
                return Err(Error::InvalidParameter("gauge generator must be anti-Hermitian".into()));
            }
            // X = i H with H Hermitian; H = V diag(λ) V†
            let h = &f.generator * Complex64::new(0.0, -1.0);
            let eig = nalgebra::SymmetricEigen::new(h);
            let evals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            out.push((f, eig.eigenvectors, evals));
        }
        Ok(Self { d, factors: out })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn theta(f: &GaugeFactor, x: &[HyperDual]) -> (HyperDual, Vec<HyperDual>) {
        let arg: HyperDual = x.iter().zip(&f.wave).map(|(xi, k)| *xi * *k).sum::<HyperDual>() + f.phase;
        let th = arg.sin() * f.amplitude;
        let c = arg.cos() * f.amplitude;
        (th, f.wave.iter().map(|k| c * *k).collect())
    }

    /// `u(x)` and the inhomogeneous terms `u ∂_μ u⁻¹`.
    pub fn eval_dual(&self, x: &[HyperDual]) -> (DualMatrix, Vec<DualMatrix>) {
        let n = x.len();
        let d = self.d;
        let mut u = DualMatrix::identity(d);
        let mut inhom = vec![DualMatrix::zeros(d); n];
        for (f, v, evals) in &self.factors {
            let (th, dth) = Self::theta(f, x);
            // u ∂u⁻¹ gains −∂θ · P X P⁻¹ with P the product so far
            let xm = DualMatrix::from_constant(&f.generator);
            let conj = u.matmul(&xm).matmul(&u.dagger());
            for (mu, h) in inhom.iter_mut().enumerate() {
                *h = h.sub(&conj.scale(dth[mu]));
            }
            let vd = DualMatrix::from_constant(v);
            let mut diag = DualMatrix::zeros(d);
            for (j, lam) in evals.iter().enumerate() {
                diag.set(j, j, CDual::cis(th * *lam));
            }
            let uk = vd.matmul(&diag).matmul(&vd.dagger());
            u = u.matmul(&uk);
        }
        (u, inhom)
    }

    pub fn at(&self, p: &Point) -> CMatrix {
        let x: Vec<HyperDual> = p.coords().iter().map(|&c| HyperDual::constant(c)).collect();
        self.eval_dual(&x).0.value()
    }
}

/// Anti-Hermitian random-looking generator from a real vector (helper for
/// building transforms): `X = i·(H + H†)/2` with `H` filled from `coeffs`.
pub fn anti_hermitian_from(d: usize, coeffs: &[f64]) -> CMatrix {
    let mut h = CMatrix::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        for j in i..d {
            let re = coeffs.get(k).copied().unwrap_or(0.0);
            let im = if i == j { 0.0 } else { coeffs.get(k + 1).copied().unwrap_or(0.0) };
            k += if i == j { 1 } else { 2 };
            h[(i, j)] = Complex64::new(re, im);
            h[(j, i)] = Complex64::new(re, -im);
        }
    }
    h * linalg::I
}
