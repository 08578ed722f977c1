use nalgebra::DMatrix;

use super::metric::GeneralizedMetric;
use crate::dual::HyperDual;
use crate::field::{ChartField, Point, Signature};
use crate::linalg;
use crate::tensor::{Slot, Tensor};
use crate::{Error, Result};

/// Frame field `E^a_μ`, stored row-major as `[a][μ]`, with frame metric `η_ab`.
#[derive(Clone, Debug)]
pub struct Vielbein {
    field: ChartField,
    signature: Signature,
}

/// Vielbein and inverse at one point. `inv[(μ, a)] = E^μ_a`.
#[derive(Clone, Debug)]
pub struct FramePoint {
    pub e: DMatrix<f64>,
    pub inv: DMatrix<f64>,
}

impl Vielbein {
    pub fn new(field: ChartField, signature: Signature) -> Result<Self> {
        let n = field.dim();
        if field.shape() != [n, n] {
            return Err(Error::Shape(format!("vielbein must have shape [{n}, {n}], got {:?}", field.shape())));
        }
        if signature.dim() != n {
            return Err(Error::DimensionMismatch { left: signature.dim(), right: n });
        }
        Ok(Self { field, signature })
    }

    pub fn from_fn(
        signature: Signature,
        f: impl Fn(&[HyperDual]) -> Vec<HyperDual> + Send + Sync + 'static,
    ) -> Result<Self> {
        let n = signature.dim();
        Self::new(ChartField::from_dual(n, vec![n, n], vec![Slot::frame_up(), Slot::coord_down()], f), signature)
    }

    /// Constant frame.
    pub fn constant(e: &DMatrix<f64>, signature: Signature) -> Result<Self> {
        let n = e.nrows();
        let data: Vec<f64> = (0..n).flat_map(|a| (0..n).map(move |m| (a, m))).map(|(a, m)| e[(a, m)]).collect();
        Self::new(ChartField::constant(n, vec![n, n], vec![Slot::frame_up(), Slot::coord_down()], data), signature)
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn field(&self) -> &ChartField {
        &self.field
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn at(&self, p: &Point) -> Result<FramePoint> {
        let n = self.dim();
        let e = DMatrix::from_row_slice(n, n, &self.field.value(p)?);
        let inv = linalg::checked_inverse(&e)?;
        Ok(FramePoint { e, inv })
    }

    pub fn tensor_at(&self, p: &Point) -> Result<Tensor<f64>> {
        self.field.value_tensor(p)
    }
}

/// `γ_μν = Σ_a η_a E^a_μ E^a_ν`.
pub fn metric_from_vielbein(e: &Vielbein) -> Result<GeneralizedMetric> {
    let n = e.dim();
    let eta = e.signature.signs().to_vec();
    let field = e.field.compose(vec![n, n], vec![Slot::coord_down(); 2], move |ev| {
        let mut out = vec![HyperDual::ZERO; n * n];
        for m in 0..n {
            for v in m..n {
                let s: HyperDual = (0..n).map(|a| ev[a * n + m] * ev[a * n + v] * eta[a]).sum();
                out[m * n + v] = s;
                out[v * n + m] = s;
            }
        }
        out
    });
    GeneralizedMetric::new(field)
}

/// Frame for a metric by `LDLᵀ` factorization: `E^a_μ = √|D_a| L_μa`.
///
/// The signature is read off the pivots at `reference`; the factorization
/// fails where a pivot vanishes or changes sign.
pub fn vielbein_from_metric(g: &GeneralizedMetric, reference: &Point) -> Result<Vielbein> {
    let n = g.dim();
    let mp = g.at(reference)?;
    let pivots = ldl_pivots(&mp.g)?;
    let signature = Signature::new(pivots.iter().map(|d| d.signum()).collect())?;
    let eta = signature.signs().to_vec();
    let field = g.field().compose(vec![n, n], vec![Slot::frame_up(), Slot::coord_down()], move |gv| {
        let (l, d) = ldl_dual(n, gv);
        let mut out = vec![HyperDual::ZERO; n * n];
        for a in 0..n {
            let s = (d[a] * eta[a]).sqrt();
            for m in a..n {
                out[a * n + m] = l[m * n + a] * s;
            }
        }
        out
    });
    Vielbein::new(field, signature)
}

fn ldl_pivots(g: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = g.nrows();
    let vals: Vec<HyperDual> = (0..n * n).map(|k| HyperDual::constant(g[(k / n, k % n)])).collect();
    let (_, d) = ldl_dual(n, &vals);
    let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    for (k, p) in d.iter().enumerate() {
        if !(p.re.abs() > 1e-13 * scale) {
            return Err(Error::SingularMatrix { det: p.re, threshold: 1e-13 * scale });
        }
        if !p.re.is_finite() {
            return Err(Error::NonFinite(format!("LDL pivot {k}")));
        }
    }
    Ok(d.iter().map(|p| p.re).collect())
}

/// Unpivoted `g = L D Lᵀ` over hyper-dual entries; `L` unit lower triangular.
fn ldl_dual(n: usize, g: &[HyperDual]) -> (Vec<HyperDual>, Vec<HyperDual>) {
    let mut l = vec![HyperDual::ZERO; n * n];
    let mut d = vec![HyperDual::ZERO; n];
    for j in 0..n {
        let mut dj = g[j * n + j];
        for k in 0..j {
            dj -= l[j * n + k] * l[j * n + k] * d[k];
        }
        d[j] = dj;
        l[j * n + j] = HyperDual::ONE;
        for i in j + 1..n {
            let mut s = g[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k] * d[k];
            }
            l[i * n + j] = s / dj;
        }
    }
    (l, d)
}

/// `ω^{ab}_μ` stored as `[a][b][μ]`.
#[derive(Clone, Debug)]
pub struct SpinConnection {
    pub n: usize,
    pub values: Vec<f64>,
}

impl SpinConnection {
    #[inline]
    pub fn get(&self, a: usize, b: usize, mu: usize) -> f64 {
        self.values[(a * self.n + b) * self.n + mu]
    }

    pub fn tensor(&self) -> Tensor<f64> {
        let n = self.n;
        Tensor::from_vec(
            vec![n, n, n],
            vec![Slot::frame_up(), Slot::frame_up(), Slot::coord_down()],
            self.values.clone(),
        )
        .expect("consistent shape")
    }

    /// Largest `|ω^{ab}_μ + ω^{ba}_μ|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for m in 0..n {
                    r = r.max((self.get(a, b, m) + self.get(b, a, m)).abs());
                }
            }
        }
        r
    }
}

/// `ω^{ab}_μ = E^a_ν ∂_μ e^{νb} + E^a_ν e^{λb} Γ^ν_{λμ}` with `e^{νb} = η^{bb} E^ν_b`.
pub fn spin_connection(e: &Vielbein, p: &Point) -> Result<SpinConnection> {
    let n = e.dim();
    let eta = e.signature.signs();
    let jet = e.field.jet(p, 1)?;
    let ev = DMatrix::from_row_slice(n, n, &jet.value);
    let inv = linalg::checked_inverse(&ev)?;
    let gamma = metric_from_vielbein(e)?.christoffel(p)?;
    // ∂_μ E^ν_b = −E^ν_c ∂_μ E^c_σ E^σ_b
    let mut values = vec![0.0; n * n * n];
    for mu in 0..n {
        let de = DMatrix::from_fn(n, n, |c, s| jet.d1(mu, c * n + s));
        let dinv = -(&inv * de * &inv);
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for nu in 0..n {
                    s += ev[(a, nu)] * dinv[(nu, b)];
                    for l in 0..n {
                        s += ev[(a, nu)] * inv[(l, b)] * gamma.get(nu, l, mu);
                    }
                }
                values[(a * n + b) * n + mu] = s * eta[b];
            }
        }
    }
    Ok(SpinConnection { n, values })
}

/// Spin connection as a field, for use where derivatives of `ω` are needed.
/// Derivatives are taken by central differences.
pub fn spin_connection_field(e: &Vielbein) -> ChartField {
    let n = e.dim();
    let e = e.clone();
    ChartField::from_plain(n, vec![n, n, n], vec![Slot::frame_up(), Slot::frame_up(), Slot::coord_down()], move |x| {
        match Point::new(x.to_vec()).and_then(|p| spin_connection(&e, &p)) {
            Ok(w) => w.values,
            Err(_) => vec![f64::NAN; n * n * n],
        }
    })
}

/// Residual of a frame against a frame-valued connection one-form `𝒜^{ab}_ν`
/// (`[a][b][ν]`):
///
/// `C^a_{μν} = ∂_ν E^a_μ − Γ^λ_{νμ} E^a_λ − η_bc 𝒜^{ba}_ν E^c_μ`, stored `[a][μ][ν]`.
///
/// For `𝒜 = ω` this is the tetrad postulate `∇_ν E^a_μ = 0`.
pub fn compatibility_residual(e: &Vielbein, conn: &ChartField, p: &Point) -> Result<Tensor<f64>> {
    let n = e.dim();
    if conn.shape() != [n, n, n] {
        return Err(Error::Shape(format!("connection must have shape [{n}, {n}, {n}], got {:?}", conn.shape())));
    }
    let eta = e.signature.signs();
    let jet = e.field.jet(p, 1)?;
    let gamma = metric_from_vielbein(e)?.christoffel(p)?;
    let a_vals = conn.value(p)?;
    let ev = |a: usize, m: usize| jet.value[a * n + m];
    let mut data = vec![0.0; n * n * n];
    for a in 0..n {
        for mu in 0..n {
            for nu in 0..n {
                let mut s = jet.d1(nu, a * n + mu);
                for l in 0..n {
                    s -= gamma.get(l, nu, mu) * ev(a, l);
                }
                for b in 0..n {
                    s -= eta[b] * a_vals[(b * n + a) * n + nu] * ev(b, mu);
                }
                data[(a * n + mu) * n + nu] = s;
            }
        }
    }
    Tensor::from_vec(vec![n, n, n], vec![Slot::frame_up(), Slot::coord_down(), Slot::coord_down()], data)
}

/// Tetrad-postulate residual of `E` against its own spin connection.
pub fn tetrad_residual(e: &Vielbein, p: &Point) -> Result<f64> {
    let n = e.dim();
    let w = spin_connection(e, p)?;
    let conn = ChartField::constant(
        n,
        vec![n, n, n],
        vec![Slot::frame_up(), Slot::frame_up(), Slot::coord_down()],
        w.values,
    );
    Ok(compatibility_residual(e, &conn, p)?.max_abs())
}

/// A frame carried along the straight line `x(t) = x0 + t·d` by
/// `dE^a_μ/dt = d^ν η_bc 𝒜^{ba}_ν E^c_μ`.
#[derive(Clone, Debug)]
pub struct FrameTransport {
    pub origin: Vec<f64>,
    pub direction: Vec<f64>,
    pub signature: Signature,
    pub ts: Vec<f64>,
    pub frames: Vec<DMatrix<f64>>,
}

fn transport_rhs(conn: &ChartField, eta: &[f64], x: &[f64], d: &[f64], e: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = e.nrows();
    let a = conn.value(&Point::new(x.to_vec())?)?;
    // M^a_c = d^ν η_cc 𝒜^{ca}_ν
    let m = DMatrix::from_fn(n, n, |row, c| (0..n).map(|nu| d[nu] * eta[c] * a[(c * n + row) * n + nu]).sum::<f64>());
    Ok(m * e)
}

/// RK4 transport of `e0` from `t = 0` to `t_end` in `steps` steps.
pub fn transport_frame(
    conn: &ChartField,
    signature: &Signature,
    origin: &[f64],
    direction: &[f64],
    e0: &DMatrix<f64>,
    t_end: f64,
    steps: usize,
) -> Result<FrameTransport> {
    let n = signature.dim();
    if origin.len() != n || direction.len() != n || e0.nrows() != n || e0.ncols() != n {
        return Err(Error::DimensionMismatch { left: origin.len(), right: n });
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("transport needs at least one step".into()));
    }
    let eta = signature.signs();
    let h = t_end / steps as f64;
    let pos = |t: f64| -> Vec<f64> { origin.iter().zip(direction).map(|(o, d)| o + t * d).collect() };
    let mut ts = vec![0.0];
    let mut frames = vec![e0.clone()];
    let mut e = e0.clone();
    for k in 0..steps {
        let t = k as f64 * h;
        let k1 = transport_rhs(conn, eta, &pos(t), direction, &e)?;
        let k2 = transport_rhs(conn, eta, &pos(t + 0.5 * h), direction, &(&e + &k1 * (0.5 * h)))?;
        let k3 = transport_rhs(conn, eta, &pos(t + 0.5 * h), direction, &(&e + &k2 * (0.5 * h)))?;
        let k4 = transport_rhs(conn, eta, &pos(t + h), direction, &(&e + &k3 * h))?;
        e += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        ts.push(t + h);
        frames.push(e.clone());
    }
    Ok(FrameTransport { origin: origin.to_vec(), direction: direction.to_vec(), signature: signature.clone(), ts, frames })
}

impl FrameTransport {
    /// Largest `|dE/dt − d^ν η 𝒜_ν E|` at interior samples, with `dE/dt` from
    /// five-point central differences of the stored frames (uniform spacing).
    pub fn residual(&self, conn: &ChartField) -> Result<f64> {
        let eta = self.signature.signs();
        let f = &self.frames;
        let mut worst: f64 = 0.0;
        for k in 2..self.ts.len().saturating_sub(2) {
            let h = self.ts[k + 1] - self.ts[k];
            let de = (&f[k - 2] - &f[k + 2] + (&f[k + 1] - &f[k - 1]) * 8.0) / (12.0 * h);
            let x: Vec<f64> = self.origin.iter().zip(&self.direction).map(|(o, d)| o + self.ts[k] * d).collect();
            let rhs = transport_rhs(conn, eta, &x, &self.direction, &f[k])?;
            worst = worst.max((de - rhs).amax());
        }
        Ok(worst)
    }
}

/// Curvature two-form of the spin connection,
/// `R^{ab}_{μν} = ∂_μ ω^{ab}_ν − ∂_ν ω^{ab}_μ + ω^a_{cμ} ω^{cb}_ν − ω^a_{cν} ω^{cb}_μ`,
/// stored `[a][b][μ][ν]`. Derivatives of `ω` are central differences.
pub fn frame_curvature(e: &Vielbein, p: &Point) -> Result<Vec<f64>> {
    let n = e.dim();
    let eta = e.signature.signs();
    let jet = spin_connection_field(e).jet(p, 1)?;
    let w = |a: usize, b: usize, m: usize| jet.value[(a * n + b) * n + m];
    let dw = |nu: usize, a: usize, b: usize, m: usize| jet.d1(nu, (a * n + b) * n + m);
    let mut out = vec![0.0; n.pow(4)];
    for a in 0..n {
        for b in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let mut s = dw(mu, a, b, nu) - dw(nu, a, b, mu);
                    for c in 0..n {
                        s += eta[c] * (w(a, c, mu) * w(c, b, nu) - w(a, c, nu) * w(c, b, mu));
                    }
                    out[((a * n + b) * n + mu) * n + nu] = s;
                }
            }
        }
    }
    Ok(out)
}

/// Coordinate Riemann tensor `R^ρ_{σμν} = E^ρ_a R^a_{bμν} E^b_σ` rebuilt from the
/// frame curvature, laid out like [`CurvatureTensors::riemann`](super::CurvatureTensors).
pub fn riemann_from_frame(e: &Vielbein, p: &Point) -> Result<Vec<f64>> {
    let n = e.dim();
    let eta = e.signature.signs();
    let fp = e.at(p)?;
    let rf = frame_curvature(e, p)?;
    let mut out = vec![0.0; n.pow(4)];
    for r in 0..n {
        for s in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let mut acc = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            acc += fp.inv[(r, a)] * rf[((a * n + b) * n + mu) * n + nu] * eta[b] * fp.e[(b, s)];
                        }
                    }
                    out[((r * n + s) * n + mu) * n + nu] = acc;
                }
            }
        }
    }
    Ok(out)
}
