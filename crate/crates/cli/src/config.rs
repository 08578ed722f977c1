//! `geodyn-config-v1`: raw TOML layout and exhaustive validation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

pub const SCHEMA: &str = "geodyn-config-v1";

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: Option<String>,
    pub name: Option<String>,
    pub seed: Option<u64>,
    /// Named constants usable in every expression.
    pub parameters: Option<BTreeMap<String, f64>>,
    pub chart: Option<RawChart>,
    pub geometry: Option<RawGeometry>,
    pub gauge: Option<RawGauge>,
    pub higgs: Option<RawHiggs>,
    pub finite_triple: Option<RawTriple>,
    pub cutoff: Option<RawCutoff>,
    pub constants: Option<RawConstants>,
    #[serde(default)]
    pub tasks: Vec<RawTask>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChart {
    pub dimension: Option<usize>,
    pub signature: Option<Vec<f64>>,
    pub coordinates: Option<Vec<String>>,
    pub lower: Option<Vec<f64>>,
    pub upper: Option<Vec<f64>>,
    pub periodic: Option<Vec<bool>>,
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGeometry {
    pub builtin: Option<String>,
    pub radius: Option<f64>,
    pub mass: Option<f64>,
    /// `E^a_μ`, row `a`, column `μ`.
    pub vielbein: Option<Vec<Vec<String>>>,
    pub metric: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGauge {
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub g3: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<Vec<String>>,
    #[serde(rename = "W")]
    pub w: Option<Vec<Vec<String>>>,
    #[serde(rename = "G")]
    pub g: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHiggs {
    /// `(Re x, Im x, Re y, Im y)` of `H = [[x, y], [−y*, x*]]`.
    #[serde(rename = "H")]
    pub h: Option<Vec<String>>,
    pub c: Option<f64>,
    pub alpha: Option<f64>,
    pub chi: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTriple {
    pub builtin: Option<String>,
    pub mass: Option<f64>,
    pub dirac: Option<Vec<Vec<f64>>>,
    pub dirac_im: Option<Vec<Vec<f64>>>,
    /// Diagonal of `γ`.
    pub grading: Option<Vec<f64>>,
    /// Real unitary `K` of `J v = K v̄`.
    pub real: Option<Vec<Vec<f64>>>,
    pub signs: Option<Vec<f64>>,
    pub generators: Option<Vec<Vec<Vec<f64>>>>,
    pub first_order: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCutoff {
    pub profile: Option<String>,
    pub lambda2: Option<f64>,
    pub p: Option<f64>,
    pub u: Option<Vec<f64>>,
    pub f: Option<Vec<f64>>,
    pub m4: Option<f64>,
    pub m2: Option<f64>,
    pub m0: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConstants {
    pub n_r: Option<f64>,
    pub n_b: Option<f64>,
    pub n_w: Option<f64>,
    pub n_g: Option<f64>,
    pub n_h: Option<f64>,
    pub n_spin: Option<f64>,
    pub kappa0: Option<f64>,
    /// `c` of the unification relation.
    pub speed: Option<f64>,
    /// Expression for `E`.
    pub endomorphism: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTask {
    pub kind: Option<String>,
    pub points: Option<Vec<Vec<f64>>>,
    pub x0: Option<Vec<f64>>,
    pub v0: Option<Vec<f64>>,
    pub dtau: Option<f64>,
    pub steps: Option<usize>,
    pub form: Option<String>,
    pub stress: Option<Vec<Vec<f64>>>,
    pub eps: Option<f64>,
    /// Overrides τ₀ = M4Λ⁴/16π² in the gravity form.
    pub tau0: Option<f64>,
    pub tolerance: Option<f64>,
}

/// One problem found in a config, located by its field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Syntax or type error from the TOML layer, with line and column.
#[derive(Clone, Debug)]
pub struct ParseFailure {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

pub fn parse_toml(src: &str) -> Result<RawConfig, ParseFailure> {
    toml::from_str::<RawConfig>(src).map_err(|e| {
        let (line, column) = match e.span() {
            Some(span) => {
                let before = &src[..span.start.min(src.len())];
                let line = before.matches('\n').count() + 1;
                let column = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        ParseFailure { line, column, message: e.message().to_string() }
    })
}
