//! Finite spectral triples and their axioms.

use num_complex::Complex64;

use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Antilinear isometry `J v = K · conj(v)`.
#[derive(Clone, Debug)]
pub struct RealStructure {
    pub k: CMatrix,
}

impl RealStructure {
    pub fn new(k: CMatrix) -> Result<Self> {
        if k.nrows() != k.ncols() {
            return Err(Error::Shape("J needs a square unitary part".into()));
        }
        Ok(Self { k })
    }

    pub fn apply(&self, v: &CMatrix) -> CMatrix {
        &self.k * v.map(|z| z.conj())
    }

    /// `J M J⁻¹ = K M̄ K⁻¹`.
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        &self.k * m.map(|z| z.conj()) * linalg::dagger(&self.k)
    }

    /// `J² = K K̄`.
    pub fn square(&self) -> CMatrix {
        &self.k * self.k.map(|z| z.conj())
    }

    /// `‖K K† − I‖`.
    pub fn isometry_residual(&self) -> f64 {
        let n = self.k.nrows();
        linalg::max_abs(&(&self.k * linalg::dagger(&self.k) - linalg::identity(n)))
    }
}

/// `(ε, ε′, ε″)` in `J² = ε`, `JD = ε′DJ`, `Jγ = ε″γJ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Signs {
    pub epsilon: f64,
    pub epsilon_d: f64,
    pub epsilon_gamma: f64,
}

impl Signs {
    pub fn new(epsilon: f64, epsilon_d: f64, epsilon_gamma: f64) -> Result<Self> {
        for s in [epsilon, epsilon_d, epsilon_gamma] {
            if s != 1.0 && s != -1.0 {
                return Err(Error::InvalidParameter(format!("sign must be ±1, got {s}")));
            }
        }
        Ok(Self { epsilon, epsilon_d, epsilon_gamma })
    }
}

/// `(𝒜, ℋ, D)` on `ℋ = ℂ^dim`. `generators` is a real basis of the
/// represented algebra.
#[derive(Clone, Debug)]
pub struct FiniteTriple {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<CMatrix>,
    pub dirac: CMatrix,
    pub grading: Option<CMatrix>,
    pub real: Option<RealStructure>,
    pub signs: Option<Signs>,
    /// Whether the first-order condition `[[D, a], JbJ⁻¹] = 0` is claimed.
    pub first_order: bool,
}

fn check_square(m: &CMatrix, dim: usize, what: &str) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Shape(format!("{what} is {}×{}, expected {dim}×{dim}", m.nrows(), m.ncols())));
    }
    Ok(())
}

impl FiniteTriple {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<CMatrix>,
        dirac: CMatrix,
        grading: Option<CMatrix>,
        real: Option<RealStructure>,
        signs: Option<Signs>,
    ) -> Result<Self> {
        let dim = dirac.nrows();
        check_square(&dirac, dim, "D")?;
        for (i, g) in generators.iter().enumerate() {
            check_square(g, dim, &format!("algebra generator {i}"))?;
        }
        if let Some(g) = &grading {
            check_square(g, dim, "γ")?;
        }
        if let Some(j) = &real {
            check_square(&j.k, dim, "J")?;
            if signs.is_none() {
                return Err(Error::MissingStructure("real structure given without (ε, ε′, ε″)".into()));
            }
        }
        if dirac.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("Dirac matrix".into()));
        }
        Ok(Self { name: name.into(), dim, generators, dirac, grading, real, signs, first_order: true })
    }

    /// `Σ c_i a_i` over the real generator basis.
    pub fn element(&self, coeffs: &[f64]) -> Result<CMatrix> {
        if coeffs.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { left: coeffs.len(), right: self.generators.len() });
        }
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            m += g * Complex64::new(*c, 0.0);
        }
        Ok(m)
    }

    pub fn with_first_order(mut self, claimed: bool) -> Self {
        self.first_order = claimed;
        self
    }

    pub fn with_dirac(&self, dirac: CMatrix) -> Result<Self> {
        check_square(&dirac, self.dim, "D")?;
        Ok(Self { dirac, ..self.clone() })
    }

    pub fn with_grading(&self, grading: Option<CMatrix>) -> Result<Self> {
        if let Some(g) = &grading {
            check_square(g, self.dim, "γ")?;
        }
        Ok(Self { grading, ..self.clone() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub name: String,
    pub residual: f64,
    /// Whether the triple claims this axiom; unclaimed checks are reported only.
    pub claimed: bool,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// `max_a ‖[D, a]‖_F` over generators (always finite here).
    pub commutator_bound: f64,
    pub tolerance: f64,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.claimed).all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.claimed).fold(0.0, |m, c| m.max(c.residual))
    }
}

/// Check every axiom the triple carries structure for.
pub fn check_axioms(t: &FiniteTriple, tolerance: f64) -> AxiomReport {
    let n = t.dim;
    let id = linalg::identity(n);
    let d = &t.dirac;
    let mut checks = Vec::new();
    let mut report = |name: &str, residual: f64, claimed: bool| {
        checks.push(AxiomCheck { name: name.into(), residual, claimed, pass: residual <= tolerance });
    };
    report("D = D*", linalg::hermiticity_residual(d), true);
    if let Some(g) = &t.grading {
        report("γ = γ*", linalg::hermiticity_residual(g), true);
        report("γ² = 1", linalg::max_abs(&(g * g - &id)), true);
        report("γD = −Dγ", linalg::max_abs(&linalg::anticommutator(g, d)), true);
        let worst = t.generators.iter().map(|a| linalg::max_abs(&linalg::commutator(g, a))).fold(0.0, f64::max);
        report("γa = aγ", worst, true);
    }
    if let (Some(j), Some(s)) = (&t.real, &t.signs) {
        report("J isometry", j.isometry_residual(), true);
        report("J² = ε", linalg::max_abs(&(j.square() - &id * Complex64::new(s.epsilon, 0.0))), true);
        report("JD = ε′DJ", linalg::max_abs(&(j.conjugate(d) - d * Complex64::new(s.epsilon_d, 0.0))), true);
        if let Some(g) = &t.grading {
            report("Jγ = ε″γJ", linalg::max_abs(&(j.conjugate(g) - g * Complex64::new(s.epsilon_gamma, 0.0))), true);
        }
        let opp: Vec<CMatrix> = t.generators.iter().map(|b| j.conjugate(b)).collect();
        let mut order0 = 0.0f64;
        let mut order1 = 0.0f64;
        for a in &t.generators {
            let da = linalg::commutator(d, a);
            for b in &opp {
                order0 = order0.max(linalg::max_abs(&linalg::commutator(a, b)));
                order1 = order1.max(linalg::max_abs(&linalg::commutator(&da, b)));
            }
        }
        report("order zero", order0, true);
        let claimed = t.first_order;
        report("first order", order1, claimed);
    }
    let commutator_bound =
        t.generators.iter().map(|a| linalg::commutator(d, a).norm()).fold(0.0, f64::max);
    AxiomReport { checks, commutator_bound, tolerance }
}
