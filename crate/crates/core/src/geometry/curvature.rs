//! Christoffel symbols and curvature of a metric at a point.
//!
//! Index conventions:
//! - `Γ^μ_{αβ} = ½ γ^{μλ}(∂_β γ_λα + ∂_α γ_λβ − ∂_λ γ_αβ)`
//! - `R^ρ_{μνλ} = ∂_ν Γ^ρ_{λμ} − ∂_λ Γ^ρ_{νμ} + Γ^ρ_{νσ}Γ^σ_{λμ} − Γ^ρ_{λσ}Γ^σ_{νμ}`
//! - `R_{μλ} = R^ρ_{μρλ}`, `R = γ^{μλ} R_{μλ}`
//!
//! With these conventions the round sphere of radius `r` has `R = 2/r²`.

use super::metric::{GeneralizedMetric, MetricPoint};
use crate::field::{Jet, Point};
use crate::tensor::{Slot, Tensor};
use crate::{Error, Result};

/// `Γ^μ_{αβ}` at a point, stored as `[μ][α][β]`.
#[derive(Clone, Debug)]
pub struct ChristoffelSymbols {
    pub n: usize,
    pub values: Vec<f64>,
}

impl ChristoffelSymbols {
    #[inline]
    pub fn get(&self, mu: usize, a: usize, b: usize) -> f64 {
        self.values[(mu * self.n + a) * self.n + b]
    }

    pub fn tensor(&self) -> Tensor<f64> {
        let n = self.n;
        Tensor::from_vec(
            vec![n, n, n],
            vec![Slot::coord_up(), Slot::coord_down(), Slot::coord_down()],
            self.values.clone(),
        )
        .expect("consistent shape")
    }

    /// Largest `|Γ^μ_{αβ} − Γ^μ_{βα}|`.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    r = r.max((self.get(m, a, b) - self.get(m, b, a)).abs());
                }
            }
        }
        r
    }

    /// Contracted symbols `Γ^β_{βα}`.
    pub fn contracted(&self) -> Vec<f64> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.get(b, b, a)).sum()).collect()
    }
}

/// Curvature at a point together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CurvatureTensors {
    pub n: usize,
    pub metric: MetricPoint,
    pub christoffel: ChristoffelSymbols,
    /// `∂_ν Γ^μ_{αβ}` stored as `[ν][μ][α][β]`.
    pub christoffel_derivative: Vec<f64>,
    /// `R^ρ_{μνλ}` stored as `[ρ][μ][ν][λ]`.
    pub riemann: Vec<f64>,
    /// `R_{μλ}` stored row-major.
    pub ricci: Vec<f64>,
    pub scalar: f64,
}

fn idx3(n: usize, a: usize, b: usize, c: usize) -> usize {
    (a * n + b) * n + c
}

pub(crate) fn idx4(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}

/// `∂_λ γ_{μν}` accessor over a jet of the metric field.
#[inline]
fn dg(jet: &Jet, lam: usize, mu: usize, nu: usize) -> f64 {
    jet.d1(lam, mu * jet.n + nu)
}

pub(crate) fn christoffel_from_jet(mp: &MetricPoint, jet: &Jet) -> ChristoffelSymbols {
    let n = jet.n;
    // first-kind symbols Γ_{λαβ}
    let mut first = vec![0.0; n * n * n];
    for l in 0..n {
        for a in 0..n {
            for b in a..n {
                let v = 0.5 * (dg(jet, b, l, a) + dg(jet, a, l, b) - dg(jet, l, a, b));
                first[idx3(n, l, a, b)] = v;
                first[idx3(n, l, b, a)] = v;
            }
        }
    }
    let mut values = vec![0.0; n * n * n];
    for m in 0..n {
        for a in 0..n {
            for b in a..n {
                let v: f64 = (0..n).map(|l| mp.inv[(m, l)] * first[idx3(n, l, a, b)]).sum();
                values[idx3(n, m, a, b)] = v;
                values[idx3(n, m, b, a)] = v;
            }
        }
    }
    ChristoffelSymbols { n, values }
}

impl GeneralizedMetric {
    pub fn christoffel(&self, p: &Point) -> Result<ChristoffelSymbols> {
        let (mp, jet) = self.jet(p, 1)?;
        Ok(christoffel_from_jet(&mp, &jet))
    }

    /// Christoffel symbols, their derivatives, Riemann, Ricci and scalar curvature.
    pub fn riemann(&self, p: &Point) -> Result<CurvatureTensors> {
        let (mp, jet) = self.jet(p, 2)?;
        Ok(curvature_from_jet(mp, &jet))
    }

    /// Ricci tensor from the reduced formula
    /// `R_μν = ∂_α Γ^α_{μν} − Γ^β_{μα} Γ^α_{νβ}`, valid only in coordinates with
    /// `√|γ| = 1` and `Γ^β_{βα} = 0` around `p`.
    pub fn ricci_simplified(&self, p: &Point) -> Result<Vec<f64>> {
        const TOL: f64 = 1e-8;
        let (mp, jet) = self.jet(p, 2)?;
        let n = jet.n;
        let vol = mp.det.abs().sqrt();
        if (vol - 1.0).abs() > TOL {
            return Err(Error::CoordinateCondition(format!("√|γ| = {vol} differs from 1")));
        }
        let cs = curvature_from_jet(mp, &jet);
        let contracted = cs.christoffel.contracted();
        let worst = contracted.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if worst > TOL {
            return Err(Error::CoordinateCondition(format!("Γ^β_βα reaches {worst:e}")));
        }
        // the condition must hold in a neighbourhood, not just at p
        let mut worst_d: f64 = 0.0;
        for nu in 0..n {
            for a in 0..n {
                let d: f64 = (0..n).map(|b| cs.d_christoffel(nu, b, b, a)).sum();
                worst_d = worst_d.max(d.abs());
            }
        }
        if worst_d > TOL {
            return Err(Error::CoordinateCondition(format!("∂_ν Γ^β_βα reaches {worst_d:e}")));
        }
        let g = &cs.christoffel;
        let mut out = vec![0.0; n * n];
        for mu in 0..n {
            for nu in 0..n {
                let mut s = 0.0;
                for a in 0..n {
                    s += cs.d_christoffel(a, a, mu, nu);
                    for b in 0..n {
                        s -= g.get(b, mu, a) * g.get(a, nu, b);
                    }
                }
                out[mu * n + nu] = s;
            }
        }
        Ok(out)
    }
}

pub(crate) fn curvature_from_jet(mp: MetricPoint, jet: &Jet) -> CurvatureTensors {
    let n = jet.n;
    let gam = christoffel_from_jet(&mp, jet);
    // ∂_ν γ^{μλ} = −γ^{μa} ∂_ν γ_ab γ^{bλ}
    let mut dinv = vec![0.0; n * n * n];
    for nu in 0..n {
        for m in 0..n {
            for l in 0..n {
                let mut s = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        s -= mp.inv[(m, a)] * dg(jet, nu, a, b) * mp.inv[(b, l)];
                    }
                }
                dinv[idx3(n, nu, m, l)] = s;
            }
        }
    }
    let mut first = vec![0.0; n * n * n];
    for l in 0..n {
        for a in 0..n {
            for b in 0..n {
                first[idx3(n, l, a, b)] = 0.5 * (dg(jet, b, l, a) + dg(jet, a, l, b) - dg(jet, l, a, b));
            }
        }
    }
    let mut dgam = vec![0.0; n * n * n * n];
    for nu in 0..n {
        for m in 0..n {
            for a in 0..n {
                for b in a..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        let dfirst = 0.5
                            * (jet.d2(nu, b, l * n + a) + jet.d2(nu, a, l * n + b) - jet.d2(nu, l, a * n + b));
                        s += dinv[idx3(n, nu, m, l)] * first[idx3(n, l, a, b)] + mp.inv[(m, l)] * dfirst;
                    }
                    dgam[idx4(n, nu, m, a, b)] = s;
                    dgam[idx4(n, nu, m, b, a)] = s;
                }
            }
        }
    }
    let mut riemann = vec![0.0; n * n * n * n];
    for r in 0..n {
        for m in 0..n {
            for nu in 0..n {
                for l in 0..n {
                    let mut s = dgam[idx4(n, nu, r, l, m)] - dgam[idx4(n, l, r, nu, m)];
                    for sg in 0..n {
                        s += gam.get(r, nu, sg) * gam.get(sg, l, m) - gam.get(r, l, sg) * gam.get(sg, nu, m);
                    }
                    riemann[idx4(n, r, m, nu, l)] = s;
                }
            }
        }
    }
    let mut ricci = vec![0.0; n * n];
    for m in 0..n {
        for l in 0..n {
            ricci[m * n + l] = (0..n).map(|r| riemann[idx4(n, r, m, r, l)]).sum();
        }
    }
    let mut scalar = 0.0;
    for m in 0..n {
        for l in 0..n {
            scalar += mp.inv[(m, l)] * ricci[m * n + l];
        }
    }
    CurvatureTensors { n, metric: mp, christoffel: gam, christoffel_derivative: dgam, riemann, ricci, scalar }
}

impl CurvatureTensors {
    #[inline]
    pub fn riemann_at(&self, r: usize, m: usize, nu: usize, l: usize) -> f64 {
        self.riemann[idx4(self.n, r, m, nu, l)]
    }

    /// `∂_ν Γ^μ_{αβ}`.
    #[inline]
    pub fn d_christoffel(&self, nu: usize, mu: usize, a: usize, b: usize) -> f64 {
        self.christoffel_derivative[idx4(self.n, nu, mu, a, b)]
    }

    pub fn ricci_at(&self, m: usize, l: usize) -> f64 {
        self.ricci[m * self.n + l]
    }

    pub fn riemann_tensor(&self) -> Tensor<f64> {
        let n = self.n;
        Tensor::from_vec(
            vec![n; 4],
            vec![Slot::coord_up(), Slot::coord_down(), Slot::coord_down(), Slot::coord_down()],
            self.riemann.clone(),
        )
        .expect("consistent shape")
    }

    pub fn ricci_tensor(&self) -> Tensor<f64> {
        let n = self.n;
        Tensor::from_vec(vec![n, n], vec![Slot::coord_down(); 2], self.ricci.clone()).expect("consistent shape")
    }

    /// All indices lowered: `R_{ρμνλ} = γ_{ρα} R^α_{μνλ}`.
    pub fn riemann_lower(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n.pow(4)];
        for r in 0..n {
            for m in 0..n {
                for nu in 0..n {
                    for l in 0..n {
                        out[idx4(n, r, m, nu, l)] =
                            (0..n).map(|a| self.metric.g[(r, a)] * self.riemann_at(a, m, nu, l)).sum();
                    }
                }
            }
        }
        out
    }

    /// All indices raised: `R^{ρμνλ}`.
    pub fn riemann_upper(&self) -> Vec<f64> {
        raise_all4(self.n, &self.riemann_lower(), &self.metric.inv)
    }

    /// `R_{ρμνλ} R^{ρμνλ}`.
    pub fn kretschmann(&self) -> f64 {
        let lo = self.riemann_lower();
        let up = raise_all4(self.n, &lo, &self.metric.inv);
        lo.iter().zip(&up).map(|(a, b)| a * b).sum()
    }

    /// `R_{μν} R^{μν}`.
    pub fn ricci_squared(&self) -> f64 {
        let n = self.n;
        let inv = &self.metric.inv;
        let mut up = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for m in 0..n {
                    for l in 0..n {
                        s += inv[(a, m)] * inv[(b, l)] * self.ricci_at(m, l);
                    }
                }
                up[a * n + b] = s;
            }
        }
        self.ricci.iter().zip(&up).map(|(a, b)| a * b).sum()
    }

    /// Largest `|R^ρ_{μνλ} + R^ρ_{μλν}|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for a in 0..n {
            for m in 0..n {
                for nu in 0..n {
                    for l in 0..n {
                        r = r.max((self.riemann_at(a, m, nu, l) + self.riemann_at(a, m, l, nu)).abs());
                    }
                }
            }
        }
        r
    }

    /// Largest cyclic sum `|R^ρ_{μνλ} + R^ρ_{νλμ} + R^ρ_{λμν}|`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for a in 0..n {
            for m in 0..n {
                for nu in 0..n {
                    for l in 0..n {
                        let s = self.riemann_at(a, m, nu, l) + self.riemann_at(a, nu, l, m) + self.riemann_at(a, l, m, nu);
                        r = r.max(s.abs());
                    }
                }
            }
        }
        r
    }
}

pub(crate) fn raise_all4(n: usize, lo: &[f64], inv: &nalgebra::DMatrix<f64>) -> Vec<f64> {
    let mut cur = lo.to_vec();
    for slot in 0..4 {
        let mut next = vec![0.0; cur.len()];
        let stride = n.pow(3 - slot as u32);
        for (o, v) in next.iter_mut().enumerate() {
            let k = (o / stride) % n;
            let base = o - k * stride;
            *v = (0..n).map(|l| inv[(k, l)] * cur[base + l * stride]).sum();
        }
        cur = next;
    }
    cur
}
