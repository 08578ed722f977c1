//! Validated scenario: every field parsed, every cross-reference checked.

use std::collections::BTreeMap;

use geodyn_core::action::{moments, CutoffFunction, Endomorphism, Moments, Profile, Region};
use geodyn_core::connection::{ConnectionForm, Couplings, HiggsField, Reparametrization, SmGauge};
use geodyn_core::geometry::{builtins, metric_from_vielbein, vielbein_from_metric, GeneralizedMetric, Vielbein};
use geodyn_core::linalg::CMatrix;
use geodyn_core::spectral::{self, FiniteTriple, RealStructure, Signs};
use geodyn_core::{ChartField, HyperDual, Point, Signature, Slot};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::config::{Diagnostic, RawConfig, RawTask, SCHEMA};
use crate::expr::{self, Expr, Scope};

#[derive(Clone, Debug)]
pub struct Chart {
    pub signature: Signature,
    pub coordinates: Vec<String>,
    pub region: Region,
    pub grid: usize,
}

#[derive(Clone, Debug)]
pub struct Geometry {
    pub name: String,
    pub metric: GeneralizedMetric,
    pub vielbein: Vielbein,
}

#[derive(Clone, Debug)]
pub struct HiggsSpec {
    pub field: HiggsField,
    pub alpha: f64,
    pub chi: CMatrix,
}

#[derive(Clone, Debug)]
pub struct CutoffSpec {
    pub cutoff: CutoffFunction,
    pub m4: Option<f64>,
    pub m2: Option<f64>,
    pub m0: Option<f64>,
}

impl CutoffSpec {
    pub fn moments(&self) -> geodyn_core::Result<Moments> {
        let mut m = moments(&self.cutoff.profile)?;
        if let Some(v) = self.m4 {
            m.m4 = v;
        }
        if let Some(v) = self.m2 {
            m.m2 = v;
        }
        if let Some(v) = self.m0 {
            m.m0 = v;
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldForm {
    Gravity,
    StandardModel,
}

#[derive(Clone, Debug)]
pub enum Task {
    Curvature { points: Vec<Vec<f64>> },
    Geodesic { x0: Vec<f64>, v0: Vec<f64>, dtau: f64, steps: usize },
    Action,
    FieldEquations { form: FieldForm, points: Vec<Vec<f64>>, stress: Option<Vec<f64>>, eps: f64, tau0: Option<f64> },
    Axioms { tolerance: f64 },
    LimitCheck,
    TraceOracle { points: Vec<Vec<f64>> },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Curvature { .. } => "curvature-at-points",
            Task::Geodesic { .. } => "geodesic",
            Task::Action => "action",
            Task::FieldEquations { .. } => "field-equations",
            Task::Axioms { .. } => "axioms",
            Task::LimitCheck => "limit-check",
            Task::TraceOracle { .. } => "trace-oracle",
        }
    }
}

pub const TASK_KINDS: [&str; 7] =
    ["curvature-at-points", "geodesic", "action", "field-equations", "axioms", "limit-check", "trace-oracle"];

pub const GEOMETRY_BUILTINS: [&str; 7] =
    ["flat", "polar", "sphere2", "sphere2-unimodular", "schwarzschild", "sphere2xflat", "custom"];

pub const TRIPLE_BUILTINS: [&str; 5] = ["two-point", "two-point-doubled", "two-point-broken", "sm-leptons", "sm-full"];

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, f64>,
    pub chart: Option<Chart>,
    pub geometry: Option<Geometry>,
    pub gauge: Option<SmGauge>,
    pub higgs: Option<HiggsSpec>,
    pub triple: Option<FiniteTriple>,
    pub cutoff: CutoffSpec,
    pub reparam: Reparametrization,
    pub kappa0: f64,
    pub speed: f64,
    pub endomorphism: Endomorphism,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn dim(&self) -> Option<usize> {
        self.chart.as_ref().map(|c| c.region.dim())
    }

    /// Connection form over the geometry, with zero gauge / Higgs fields when
    /// the config has none.
    pub fn connection_form(&self) -> geodyn_core::Result<ConnectionForm> {
        let geo = self
            .geometry
            .as_ref()
            .ok_or_else(|| geodyn_core::Error::MissingStructure("scenario has no geometry".into()))?;
        let n = geo.vielbein.dim();
        let gauge = match &self.gauge {
            Some(g) => g.clone(),
            None => SmGauge::zero(n, Couplings { g1: 1.0, g2: 1.0, g3: 1.0 })?,
        };
        let (higgs, alpha, chi) = match &self.higgs {
            Some(h) => (h.field.clone(), h.alpha, h.chi.clone()),
            None => (HiggsField::zero(n, 0.0)?, 1.0, ConnectionForm::default_chi()),
        };
        ConnectionForm::new(geo.vielbein.clone(), gauge, higgs, alpha, chi)
    }
}

struct V {
    diags: Vec<Diagnostic>,
    scope: Scope,
}

impl V {
    fn err(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.diags.push(Diagnostic { path: path.into(), message: message.into() });
    }

    fn expr(&mut self, path: &str, src: &str) -> Option<Expr> {
        match expr::parse(src, &self.scope) {
            Ok(e) => Some(e),
            Err(e) => {
                self.err(path, format!("'{src}': {e}"));
                None
            }
        }
    }

    /// Parse a list of expressions of exact length `len`.
    fn exprs(&mut self, path: &str, src: &[String], len: usize) -> Option<Vec<Expr>> {
        if src.len() != len {
            self.err(path, format!("expected {len} expressions, got {}", src.len()));
            return None;
        }
        let out: Vec<Option<Expr>> = src.iter().enumerate().map(|(i, s)| self.expr(&format!("{path}[{i}]"), s)).collect();
        out.into_iter().collect()
    }

    fn matrix(&mut self, path: &str, src: &[Vec<String>], rows: usize, cols: usize) -> Option<Vec<Expr>> {
        if src.len() != rows {
            self.err(path, format!("expected {rows} rows, got {}", src.len()));
            return None;
        }
        let mut out = Vec::with_capacity(rows * cols);
        let mut ok = true;
        for (i, row) in src.iter().enumerate() {
            match self.exprs(&format!("{path}[{i}]"), row, cols) {
                Some(r) => out.extend(r),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn positive(&mut self, path: &str, v: f64) -> bool {
        if v > 0.0 && v.is_finite() {
            true
        } else {
            self.err(path, format!("must be positive and finite, got {v}"));
            false
        }
    }

    fn finite(&mut self, path: &str, v: f64) -> bool {
        if v.is_finite() {
            true
        } else {
            self.err(path, format!("must be finite, got {v}"));
            false
        }
    }

    fn point(&mut self, path: &str, p: &[f64], n: usize) -> bool {
        if p.len() != n {
            self.err(path, format!("expected {n} coordinates, got {}", p.len()));
            return false;
        }
        if p.iter().any(|v| !v.is_finite()) {
            self.err(path, "coordinates must be finite");
            return false;
        }
        true
    }
}

fn field_from(n: usize, shape: Vec<usize>, exprs: Vec<Expr>) -> ChartField {
    let slots = vec![Slot::internal(); shape.len()];
    ChartField::from_dual(n, shape, slots, move |x| exprs.iter().map(|e| e.eval(x)).collect())
}

fn real_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

fn complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| Complex64::new(v, 0.0))
}

fn rectangular(rows: &[Vec<f64>], n: usize) -> bool {
    rows.len() == n && rows.iter().all(|r| r.len() == n && r.iter().all(|v| v.is_finite()))
}

/// Interior sample points: midpoints of a `k`-per-axis partition.
pub fn interior_points(region: &Region, k: usize) -> Vec<Vec<f64>> {
    let n = region.dim();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut x = vec![0.0; n];
            for a in (0..n).rev() {
                let i = idx % k;
                idx /= k;
                x[a] = region.lower[a] + (i as f64 + 0.5) / k as f64 * (region.upper[a] - region.lower[a]);
            }
            x
        })
        .collect()
}

pub fn region_center(region: &Region) -> Vec<f64> {
    region.lower.iter().zip(&region.upper).map(|(l, u)| 0.5 * (l + u)).collect()
}

/// Validate `raw`, collecting every problem. `grid` and `seed` override the
/// file's values.
pub fn validate(raw: &RawConfig, grid: Option<usize>, seed: Option<u64>) -> Result<Scenario, Vec<Diagnostic>> {
    let parameters = raw.parameters.clone().unwrap_or_default();
    let mut v = V { diags: Vec::new(), scope: Scope::new(Vec::new(), parameters.clone()) };
    match raw.schema.as_deref() {
        Some(SCHEMA) => {}
        Some(other) => v.err("schema", format!("unsupported schema '{other}', expected '{SCHEMA}'")),
        None => v.err("schema", format!("missing; expected '{SCHEMA}'")),
    }
    for (k, val) in &parameters {
        if !val.is_finite() {
            v.err(format!("parameters.{k}"), "must be finite");
        }
        if ["pi", "sin", "cos", "exp", "sqrt"].contains(&k.as_str()) {
            v.err(format!("parameters.{k}"), "shadows a built-in name");
        }
    }
    let name = raw.name.clone().unwrap_or_else(|| "scenario".into());
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
        v.err("name", "must be non-empty and use only letters, digits, '-' and '_'");
    }
    if raw.tasks.is_empty() {
        v.err("tasks", "at least one [[tasks]] entry is required");
    }

    // chart and geometry
    let builtin_geo = raw.geometry.as_ref().and_then(|g| g.builtin.clone());
    let fixed: Option<(usize, Signature, Vec<String>)> = match builtin_geo.as_deref() {
        Some("polar") => Some((2, Signature::euclidean(2), vec!["r".into(), "theta".into()])),
        Some("sphere2") => Some((2, Signature::euclidean(2), vec!["theta".into(), "phi".into()])),
        Some("sphere2-unimodular") => Some((2, Signature::euclidean(2), vec!["u".into(), "phi".into()])),
        Some("schwarzschild") => {
            Some((4, Signature::lorentzian(4), vec!["t".into(), "r".into(), "theta".into(), "phi".into()]))
        }
        Some("sphere2xflat") => {
            Some((4, Signature::euclidean(4), vec!["theta".into(), "phi".into(), "x".into(), "y".into()]))
        }
        _ => None,
    };
    let chart = match &raw.chart {
        None => {
            if raw.geometry.is_some() {
                v.err("chart", "required when [geometry] is given");
            }
            None
        }
        Some(c) => {
            let n = match (c.dimension, &fixed) {
                (Some(d), Some((fd, _, _))) if d != *fd => {
                    v.err("chart.dimension", format!("geometry '{}' is {fd}-dimensional, chart says {d}", builtin_geo.clone().unwrap_or_default()));
                    None
                }
                (Some(0), _) => {
                    v.err("chart.dimension", "must be at least 1");
                    None
                }
                (Some(d), _) => Some(d),
                (None, Some((fd, _, _))) => Some(*fd),
                (None, None) => {
                    v.err("chart.dimension", "missing");
                    None
                }
            };
            n.and_then(|n| {
                let signature = match (&c.signature, &fixed) {
                    (Some(s), _) if s.len() != n => {
                        v.err("chart.signature", format!("expected {n} entries, got {}", s.len()));
                        None
                    }
                    (Some(s), _) if s.iter().any(|x| *x != 1.0 && *x != -1.0) => {
                        v.err("chart.signature", "entries must be +1 or -1");
                        None
                    }
                    (Some(s), Some((_, fs, _))) if s.as_slice() != fs.signs() => {
                        v.err("chart.signature", format!("geometry fixes the signature to {:?}", fs.signs()));
                        None
                    }
                    (Some(s), _) => Signature::new(s.clone()).ok(),
                    (None, Some((_, fs, _))) => Some(fs.clone()),
                    (None, None) => Some(Signature::euclidean(n)),
                };
                let coordinates = match (&c.coordinates, &fixed) {
                    (Some(names), _) => {
                        if names.len() != n {
                            v.err("chart.coordinates", format!("expected {n} names, got {}", names.len()));
                        }
                        let mut seen = std::collections::BTreeSet::new();
                        for (i, nm) in names.iter().enumerate() {
                            let ok = nm.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic())
                                && nm.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                            if !ok || ["pi", "sin", "cos", "exp", "sqrt"].contains(&nm.as_str()) {
                                v.err(format!("chart.coordinates[{i}]"), format!("'{nm}' is not a usable name"));
                            }
                            if !seen.insert(nm.clone()) {
                                v.err(format!("chart.coordinates[{i}]"), format!("duplicate name '{nm}'"));
                            }
                        }
                        names.clone()
                    }
                    (None, Some((_, _, names))) => names.clone(),
                    (None, None) => (0..n).map(|i| format!("x{i}")).collect(),
                };
                let lower = c.lower.clone();
                let upper = c.upper.clone();
                let periodic = c.periodic.clone().unwrap_or(vec![false; n]);
                let mut ok = true;
                for (key, b) in [("chart.lower", &lower), ("chart.upper", &upper)] {
                    match b {
                        None => {
                            v.err(key, "missing");
                            ok = false;
                        }
                        Some(b) => ok &= v.point(key, b, n),
                    }
                }
                if periodic.len() != n {
                    v.err("chart.periodic", format!("expected {n} flags, got {}", periodic.len()));
                    ok = false;
                }
                let g = grid.or(c.grid).unwrap_or(4);
                if g < 2 {
                    v.err("chart.grid", format!("must be at least 2, got {g}"));
                    ok = false;
                }
                let region = if ok {
                    match Region::new(lower.unwrap(), upper.unwrap(), periodic) {
                        Ok(r) => Some(r),
                        Err(e) => {
                            v.err("chart", e.to_string());
                            None
                        }
                    }
                } else {
                    None
                };
                match (signature, region) {
                    (Some(signature), Some(region)) => Some(Chart { signature, coordinates, region, grid: g }),
                    _ => None,
                }
            })
        }
    };
    if let Some(c) = &chart {
        v.scope = Scope::new(c.coordinates.clone(), parameters.clone());
    }
    let n = chart.as_ref().map(|c| c.region.dim());

    let geometry = match (&raw.geometry, &chart) {
        (Some(g), Some(c)) => build_geometry(&mut v, g, c),
        (Some(g), None) => {
            match g.builtin.as_deref() {
                None => v.err("geometry.builtin", "missing"),
                Some(k) if !GEOMETRY_BUILTINS.contains(&k) => {
                    v.err("geometry.builtin", format!("unknown geometry '{k}' ({})", GEOMETRY_BUILTINS.join(", ")))
                }
                Some(_) => {}
            }
            None
        }
        (None, _) => None,
    };

    // gauge and Higgs fields
    let gauge = match (&raw.gauge, n) {
        (Some(g), Some(n)) => {
            let mut couplings = [1.0; 3];
            let fields = [("B", g.b.is_some()), ("W", g.w.is_some()), ("G", g.g.is_some())];
            for (k, (key, val)) in [("g1", g.g1), ("g2", g.g2), ("g3", g.g3)].into_iter().enumerate() {
                match val {
                    Some(x) => {
                        if v.positive(&format!("gauge.{key}"), x) {
                            couplings[k] = x;
                        }
                    }
                    None if fields[k].1 => {
                        v.err(format!("gauge.{key}"), format!("coupling {key} is required when {} is given", fields[k].0))
                    }
                    None => {}
                }
            }
            let zero_row = |len: usize| vec!["0".to_string(); len];
            let b = v.exprs("gauge.B", g.b.as_ref().unwrap_or(&zero_row(n)), n);
            let w = v.matrix("gauge.W", g.w.as_ref().unwrap_or(&vec![zero_row(n); 3]), 3, n);
            let gg = v.matrix("gauge.G", g.g.as_ref().unwrap_or(&vec![zero_row(n); 8]), 8, n);
            match (b, w, gg) {
                (Some(b), Some(w), Some(gg)) => SmGauge::new(
                    field_from(n, vec![n], b),
                    field_from(n, vec![3, n], w),
                    field_from(n, vec![8, n], gg),
                    Couplings { g1: couplings[0], g2: couplings[1], g3: couplings[2] },
                )
                .map_err(|e| v.err("gauge", e.to_string()))
                .ok(),
                _ => None,
            }
        }
        (Some(_), None) => {
            v.err("gauge", "needs a [chart]");
            None
        }
        (None, _) => None,
    };
    let higgs = match (&raw.higgs, n) {
        (Some(h), Some(n)) => {
            let zero = vec!["0".to_string(); 4];
            let comps = v.exprs("higgs.H", h.h.as_ref().unwrap_or(&zero), 4);
            let c = h.c.unwrap_or(0.0);
            v.finite("higgs.c", c);
            let alpha = h.alpha.unwrap_or(1.0);
            let alpha_ok = v.positive("higgs.alpha", alpha);
            let chi = match h.chi.as_deref().unwrap_or("sigma1") {
                "sigma1" => Some(ConnectionForm::default_chi()),
                "identity2" => Some(geodyn_core::linalg::identity(2)),
                other => {
                    v.err("higgs.chi", format!("unknown χ '{other}' (sigma1, identity2)"));
                    None
                }
            };
            match (comps, chi) {
                (Some(comps), Some(chi)) if alpha_ok && c.is_finite() => HiggsField::new(field_from(n, vec![4], comps), c)
                    .map_err(|e| v.err("higgs", e.to_string()))
                    .ok()
                    .map(|field| HiggsSpec { field, alpha, chi }),
                _ => None,
            }
        }
        (Some(_), None) => {
            v.err("higgs", "needs a [chart]");
            None
        }
        (None, _) => None,
    };

    let triple = raw.finite_triple.as_ref().and_then(|t| build_triple(&mut v, t));

    // cutoff
    let rc = raw.cutoff.clone().unwrap_or_default();
    let profile = match rc.profile.as_deref().unwrap_or("exponential") {
        "exponential" => Some(Profile::Exponential),
        "sharp" => Some(Profile::Sharp),
        "gaussian" => Some(Profile::Gaussian),
        "rational" => match rc.p {
            Some(p) => Some(Profile::Rational(p)),
            None => {
                v.err("cutoff.p", "required for the rational profile");
                None
            }
        },
        "tabulated" => match (&rc.u, &rc.f) {
            (Some(u), Some(f)) => Some(Profile::Tabulated { u: u.clone(), f: f.clone() }),
            _ => {
                v.err("cutoff", "tabulated profile needs both u and f");
                None
            }
        },
        other => {
            v.err("cutoff.profile", format!("unknown profile '{other}' (exponential, sharp, gaussian, rational, tabulated)"));
            None
        }
    };
    let lambda2 = rc.lambda2.unwrap_or(1.0);
    let cutoff = profile.and_then(|p| match CutoffFunction::new(p, lambda2) {
        Ok(c) => Some(c),
        Err(e) => {
            v.err("cutoff", e.to_string());
            None
        }
    });
    for (key, val) in [("cutoff.m4", rc.m4), ("cutoff.m2", rc.m2), ("cutoff.m0", rc.m0)] {
        if let Some(x) = val {
            v.finite(key, x);
        }
    }

    // constants
    let k = raw.constants.clone().unwrap_or_default();
    let d = Reparametrization::default();
    let reparam = Reparametrization {
        n_r: k.n_r.unwrap_or(d.n_r),
        n_b: k.n_b.unwrap_or(d.n_b),
        n_w: k.n_w.unwrap_or(d.n_w),
        n_g: k.n_g.unwrap_or(d.n_g),
        n_h: k.n_h.unwrap_or(d.n_h),
        n_spin: k.n_spin.unwrap_or(d.n_spin),
    };
    if let Err(e) = reparam.validate() {
        v.err("constants", e.to_string());
    }
    let kappa0 = k.kappa0.unwrap_or(1.0);
    v.finite("constants.kappa0", kappa0);
    let speed = k.speed.unwrap_or(1.0);
    v.positive("constants.speed", speed);
    let endomorphism = match (&k.endomorphism, n) {
        (None, _) => Endomorphism::Zero,
        (Some(src), Some(n)) => match v.expr("constants.endomorphism", src) {
            Some(e) if e.is_constant() => Endomorphism::Constant(e.eval_f64(&vec![0.0; n])),
            Some(e) => Endomorphism::Field(field_from(n, vec![1], vec![e])),
            None => Endomorphism::Zero,
        },
        (Some(_), None) => {
            v.err("constants.endomorphism", "needs a [chart]");
            Endomorphism::Zero
        }
    };

    // tasks
    let mut tasks = Vec::new();
    for (i, t) in raw.tasks.iter().enumerate() {
        let have = |present: bool, valid: bool| match (present, valid) {
            (false, _) => Have::Absent,
            (true, false) => Have::Invalid,
            (true, true) => Have::Valid,
        };
        let sections = Sections {
            geometry: have(raw.geometry.is_some(), geometry.is_some()),
            gauge: have(raw.gauge.is_some(), gauge.is_some()),
            triple: have(raw.finite_triple.is_some(), triple.is_some()),
        };
        if let Some(task) = build_task(&mut v, i, t, &chart, sections) {
            tasks.push(task);
        }
    }

    if v.diags.is_empty() {
        Ok(Scenario {
            name,
            seed: seed.or(raw.seed).unwrap_or(0),
            parameters,
            chart,
            geometry,
            gauge,
            higgs,
            triple,
            cutoff: CutoffSpec { cutoff: cutoff.expect("validated"), m4: rc.m4, m2: rc.m2, m0: rc.m0 },
            reparam,
            kappa0,
            speed,
            endomorphism,
            tasks,
        })
    } else {
        Err(v.diags)
    }
}

fn build_geometry(v: &mut V, g: &crate::config::RawGeometry, c: &Chart) -> Option<Geometry> {
    let Some(kind) = g.builtin.as_deref() else {
        v.err("geometry.builtin", format!("missing; one of {}", GEOMETRY_BUILTINS.join(", ")));
        return None;
    };
    if !GEOMETRY_BUILTINS.contains(&kind) {
        v.err("geometry.builtin", format!("unknown geometry '{kind}' ({})", GEOMETRY_BUILTINS.join(", ")));
        return None;
    }
    if kind != "custom" && (g.vielbein.is_some() || g.metric.is_some()) {
        v.err("geometry", "vielbein/metric expressions are only read for builtin = \"custom\"");
    }
    let radius = g.radius.unwrap_or(1.0);
    let mass = g.mass.unwrap_or(1.0);
    if g.radius.is_some() && !["sphere2", "sphere2xflat"].contains(&kind) {
        v.err("geometry.radius", format!("not a parameter of '{kind}'"));
    }
    if g.mass.is_some() && kind != "schwarzschild" {
        v.err("geometry.mass", format!("not a parameter of '{kind}'"));
    }
    let built = match kind {
        "flat" => builtins::flat(c.signature.clone()),
        "polar" => builtins::polar(),
        "sphere2" => {
            if !v.positive("geometry.radius", radius) {
                return None;
            }
            builtins::sphere2(radius)
        }
        "sphere2-unimodular" => builtins::sphere2_unimodular(),
        "schwarzschild" => {
            if !v.positive("geometry.mass", mass) {
                return None;
            }
            builtins::schwarzschild(mass)
        }
        "sphere2xflat" => {
            if !v.positive("geometry.radius", radius) {
                return None;
            }
            builtins::sphere2_times_flat(radius)
        }
        _ => return build_custom(v, g, c),
    };
    match built {
        Ok(b) => Some(Geometry { name: b.name, metric: b.metric, vielbein: b.vielbein }),
        Err(e) => {
            v.err("geometry", e.to_string());
            None
        }
    }
}

fn build_custom(v: &mut V, g: &crate::config::RawGeometry, c: &Chart) -> Option<Geometry> {
    let n = c.region.dim();
    match (&g.vielbein, &g.metric) {
        (Some(e), None) => {
            let exprs = v.matrix("geometry.vielbein", e, n, n)?;
            let vb = Vielbein::from_fn(c.signature.clone(), move |x| exprs.iter().map(|e| e.eval(x)).collect::<Vec<HyperDual>>());
            let vb = vb.map_err(|e| v.err("geometry.vielbein", e.to_string())).ok()?;
            let metric = metric_from_vielbein(&vb).map_err(|e| v.err("geometry.vielbein", e.to_string())).ok()?;
            check_nonsingular(v, "geometry.vielbein", &metric, c)?;
            Some(Geometry { name: "custom".into(), metric, vielbein: vb })
        }
        (None, Some(m)) => {
            let exprs = v.matrix("geometry.metric", m, n, n)?;
            let center = Point::new(region_center(&c.region)).ok()?;
            let asym = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).any(|(i, j)| {
                let x = center.coords();
                (exprs[i * n + j].eval_f64(x) - exprs[j * n + i].eval_f64(x)).abs() > 1e-12
            });
            if asym {
                v.err("geometry.metric", "must be symmetric");
                return None;
            }
            let metric = GeneralizedMetric::from_fn(n, move |x| exprs.iter().map(|e| e.eval(x)).collect())
                .map_err(|e| v.err("geometry.metric", e.to_string()))
                .ok()?;
            check_nonsingular(v, "geometry.metric", &metric, c)?;
            let vb = vielbein_from_metric(&metric, &center).map_err(|e| v.err("geometry.metric", e.to_string())).ok()?;
            if vb.signature().signs() != c.signature.signs() {
                v.err(
                    "chart.signature",
                    format!("metric has signature {:?} at the region centre", vb.signature().signs()),
                );
                return None;
            }
            Some(Geometry { name: "custom".into(), metric, vielbein: vb })
        }
        (Some(_), Some(_)) => {
            v.err("geometry", "give either vielbein or metric, not both");
            None
        }
        (None, None) => {
            v.err("geometry", "custom geometry needs a vielbein or a metric");
            None
        }
    }
}

fn check_nonsingular(v: &mut V, path: &str, g: &GeneralizedMetric, c: &Chart) -> Option<()> {
    let p = Point::new(region_center(&c.region)).ok()?;
    match g.at(&p) {
        Ok(_) => Some(()),
        Err(e) => {
            v.err(path, format!("at the region centre: {e}"));
            None
        }
    }
}

fn build_triple(v: &mut V, t: &crate::config::RawTriple) -> Option<FiniteTriple> {
    let mass = t.mass.unwrap_or(1.0);
    v.finite("finite_triple.mass", mass);
    let inline = t.dirac.is_some() || t.generators.is_some() || t.grading.is_some() || t.real.is_some();
    match (&t.builtin, inline) {
        (Some(_), true) => {
            v.err("finite_triple", "give either builtin or inline matrices, not both");
            None
        }
        (Some(name), false) => {
            if !TRIPLE_BUILTINS.contains(&name.as_str()) {
                v.err("finite_triple.builtin", format!("unknown triple '{name}' ({})", TRIPLE_BUILTINS.join(", ")));
                return None;
            }
            let built = if name == "two-point-broken" {
                // grading replaced by the identity: γD = −Dγ fails by 2|m|
                spectral::builtin("two-point", mass).and_then(|t| {
                    let mut b = t.with_grading(Some(geodyn_core::linalg::identity(2)))?;
                    b.name = "two-point-broken".into();
                    Ok(b)
                })
            } else {
                spectral::builtin(name, mass)
            };
            let built = built.map_err(|e| v.err("finite_triple", e.to_string())).ok()?;
            Some(match t.first_order {
                Some(f) => built.with_first_order(f),
                None => built,
            })
        }
        (None, false) => {
            v.err("finite_triple", "needs builtin or inline dirac/generators");
            None
        }
        (None, true) => {
            let Some(dirac) = &t.dirac else {
                v.err("finite_triple.dirac", "missing");
                return None;
            };
            let n = dirac.len();
            let mut ok = true;
            if n == 0 || !rectangular(dirac, n) {
                v.err("finite_triple.dirac", "must be a non-empty square matrix of finite numbers");
                ok = false;
            }
            if let Some(im) = &t.dirac_im {
                if !rectangular(im, n) {
                    v.err("finite_triple.dirac_im", format!("must be {n}×{n}"));
                    ok = false;
                }
            }
            let gens = t.generators.clone().unwrap_or_default();
            if gens.is_empty() {
                v.err("finite_triple.generators", "at least one generator is required");
                ok = false;
            }
            for (i, g) in gens.iter().enumerate() {
                if !rectangular(g, n) {
                    v.err(format!("finite_triple.generators[{i}]"), format!("must be {n}×{n}"));
                    ok = false;
                }
            }
            if let Some(gr) = &t.grading {
                if gr.len() != n || gr.iter().any(|x| *x != 1.0 && *x != -1.0) {
                    v.err("finite_triple.grading", format!("must list {n} entries of ±1"));
                    ok = false;
                }
            }
            let signs = match (&t.real, &t.signs) {
                (Some(k), Some(s)) => {
                    if !rectangular(k, n) {
                        v.err("finite_triple.real", format!("must be {n}×{n}"));
                        ok = false;
                    }
                    if s.len() != 3 {
                        v.err("finite_triple.signs", "expected three signs (ε, ε′, ε″)");
                        ok = false;
                        None
                    } else {
                        match Signs::new(s[0], s[1], s[2]) {
                            Ok(s) => Some(s),
                            Err(e) => {
                                v.err("finite_triple.signs", e.to_string());
                                ok = false;
                                None
                            }
                        }
                    }
                }
                (Some(_), None) => {
                    v.err("finite_triple.signs", "required with a real structure");
                    ok = false;
                    None
                }
                (None, Some(_)) => {
                    v.err("finite_triple.real", "signs given without a real structure");
                    ok = false;
                    None
                }
                (None, None) => None,
            };
            if !ok {
                return None;
            }
            let mut d = complex(&real_matrix(dirac));
            if let Some(im) = &t.dirac_im {
                d += real_matrix(im).map(|x| Complex64::new(0.0, x));
            }
            let generators = gens.iter().map(|g| complex(&real_matrix(g))).collect();
            let grading = t.grading.as_ref().map(|gr| {
                CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, gr.iter().map(|x| Complex64::new(*x, 0.0))))
            });
            let real = match &t.real {
                Some(k) => match RealStructure::new(complex(&real_matrix(k))) {
                    Ok(r) => Some(r),
                    Err(e) => {
                        v.err("finite_triple.real", e.to_string());
                        return None;
                    }
                },
                None => None,
            };
            FiniteTriple::new("inline", generators, d, grading, real, signs)
                .map(|t2| t2.with_first_order(t.first_order.unwrap_or(true)))
                .map_err(|e| v.err("finite_triple", e.to_string()))
                .ok()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Have {
    Absent,
    /// Present but already reported.
    Invalid,
    Valid,
}

#[derive(Clone, Copy)]
struct Sections {
    geometry: Have,
    gauge: Have,
    triple: Have,
}

fn build_task(v: &mut V, i: usize, t: &RawTask, chart: &Option<Chart>, sections: Sections) -> Option<Task> {
    let path = format!("tasks[{i}]");
    let Some(kind) = t.kind.as_deref() else {
        v.err(format!("{path}.kind"), format!("missing; one of {}", TASK_KINDS.join(", ")));
        return None;
    };
    if !TASK_KINDS.contains(&kind) {
        v.err(format!("{path}.kind"), format!("unknown task '{kind}' ({})", TASK_KINDS.join(", ")));
        return None;
    }
    // fields each kind reads
    let allowed: &[&str] = match kind {
        "curvature-at-points" | "trace-oracle" => &["points"],
        "geodesic" => &["x0", "v0", "dtau", "steps"],
        "action" | "limit-check" => &[],
        "field-equations" => &["form", "points", "stress", "eps", "tau0"],
        _ => &["tolerance"],
    };
    let present = [
        ("points", t.points.is_some()),
        ("x0", t.x0.is_some()),
        ("v0", t.v0.is_some()),
        ("dtau", t.dtau.is_some()),
        ("steps", t.steps.is_some()),
        ("form", t.form.is_some()),
        ("stress", t.stress.is_some()),
        ("eps", t.eps.is_some()),
        ("tau0", t.tau0.is_some()),
        ("tolerance", t.tolerance.is_some()),
    ];
    for (key, is) in present {
        if is && !allowed.contains(&key) {
            v.err(format!("{path}.{key}"), format!("not used by task '{kind}'"));
        }
    }
    let mut needs = Vec::new();
    if kind != "axioms" {
        needs.push((sections.geometry, "[geometry]"));
    }
    if kind == "axioms" {
        needs.push((sections.triple, "[finite_triple]"));
    }
    if kind == "trace-oracle" {
        needs.push((sections.gauge, "[gauge] with B, W and G"));
    }
    let mut runnable = true;
    for (have, what) in needs {
        if have == Have::Absent {
            v.err(&path, format!("task '{kind}' needs {what}"));
        }
        runnable &= have == Have::Valid;
    }
    let n = chart.as_ref().map(|c| c.region.dim());
    let points = |v: &mut V, default: &dyn Fn(&Region) -> Vec<Vec<f64>>| -> Option<Vec<Vec<f64>>> {
        let c = chart.as_ref()?;
        match &t.points {
            Some(ps) => {
                if ps.is_empty() {
                    v.err(format!("{path}.points"), "must list at least one point");
                    return None;
                }
                let mut ok = true;
                for (j, p) in ps.iter().enumerate() {
                    ok &= v.point(&format!("{path}.points[{j}]"), p, c.region.dim());
                }
                ok.then(|| ps.clone())
            }
            None => Some(default(&c.region)),
        }
    };
    let task = match kind {
        "curvature-at-points" => {
            let grid = chart.as_ref().map(|c| c.grid).unwrap_or(2);
            let ps = points(v, &|r| interior_points(r, grid.min(4)))?;
            Some(Task::Curvature { points: ps })
        }
        "trace-oracle" => {
            let ps = points(v, &|r| vec![region_center(r)])?;
            Some(Task::TraceOracle { points: ps })
        }
        "geodesic" => {
            let n = n?;
            let mut ok = true;
            for (key, val) in [("x0", &t.x0), ("v0", &t.v0)] {
                match val {
                    Some(p) => ok &= v.point(&format!("{path}.{key}"), p, n),
                    None => {
                        v.err(format!("{path}.{key}"), "missing");
                        ok = false;
                    }
                }
            }
            let dtau = t.dtau.unwrap_or(0.01);
            ok &= v.positive(&format!("{path}.dtau"), dtau);
            let steps = t.steps.unwrap_or(1000);
            if steps == 0 || steps > 10_000_000 {
                v.err(format!("{path}.steps"), format!("must be in 1..=10000000, got {steps}"));
                ok = false;
            }
            ok.then(|| Task::Geodesic { x0: t.x0.clone().unwrap(), v0: t.v0.clone().unwrap(), dtau, steps })
        }
        "action" => Some(Task::Action),
        "limit-check" => Some(Task::LimitCheck),
        "field-equations" => {
            let n = n?;
            let form = match t.form.as_deref().unwrap_or("gravity") {
                "gravity" => FieldForm::Gravity,
                "sm" => FieldForm::StandardModel,
                other => {
                    v.err(format!("{path}.form"), format!("unknown form '{other}' (gravity, sm)"));
                    return None;
                }
            };
            let stress = match &t.stress {
                Some(s) if !rectangular(s, n) => {
                    v.err(format!("{path}.stress"), format!("must be {n}×{n} finite numbers"));
                    return None;
                }
                Some(s) => Some(s.iter().flatten().copied().collect()),
                None => None,
            };
            let eps = t.eps.unwrap_or(1e-4);
            if !v.positive(&format!("{path}.eps"), eps) {
                return None;
            }
            if let Some(t0) = t.tau0 {
                if form == FieldForm::StandardModel {
                    v.err(format!("{path}.tau0"), "only read by the gravity form");
                }
                if !v.finite(&format!("{path}.tau0"), t0) {
                    return None;
                }
            }
            let ps = points(v, &|r| vec![region_center(r)])?;
            Some(Task::FieldEquations { form, points: ps, stress, eps, tau0: t.tau0 })
        }
        _ => {
            let tolerance = t.tolerance.unwrap_or(1e-12);
            v.positive(&format!("{path}.tolerance"), tolerance).then_some(Task::Axioms { tolerance })
        }
    };
    task.filter(|_| runnable)
}

