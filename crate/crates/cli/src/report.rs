//! Run output: one CSV per table (fixed 17-significant-digit floats) and a
//! human-readable report.txt.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(f64),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => fmt_num(*v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any f64.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "table {}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render))?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// A residual compared against a tolerance. Informational checks are
/// reported but do not decide the exit status.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub informational: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value.abs() <= tolerance, informational: false }
    }

    pub fn info(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { informational: true, ..Self::at_most(name, value, tolerance) }
    }
}

#[derive(Clone, Debug)]
pub struct TaskOutput {
    pub index: usize,
    pub kind: String,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl TaskOutput {
    pub fn new(index: usize, kind: &str) -> Self {
        Self {
            index,
            kind: kind.into(),
            tables: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> bool {
        self.error.is_some() || self.checks.iter().any(|c| !c.pass && !c.informational)
    }

    pub fn file_stem(&self) -> String {
        format!("task{:02}_{}", self.index, self.kind)
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub scenario: String,
    pub seed: u64,
    pub grid: Option<usize>,
    pub threads: usize,
    pub parameters: Vec<(String, f64)>,
    pub tasks: Vec<TaskOutput>,
}

impl RunReport {
    pub fn failed(&self) -> bool {
        self.tasks.iter().any(TaskOutput::failed)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {}", self.scenario);
        let _ = writeln!(s, "seed: {}", self.seed);
        if let Some(g) = self.grid {
            let _ = writeln!(s, "grid: {g}");
        }
        let _ = writeln!(s, "threads: {}", self.threads);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "parameter {k} = {}", fmt_num(*v));
        }
        for t in &self.tasks {
            let _ = writeln!(s, "\n[{}] {} ({:.3} s)", t.index, t.kind, t.elapsed.as_secs_f64());
            if let Some(e) = &t.error {
                let _ = writeln!(s, "  ERROR {e}");
            }
            for c in &t.checks {
                let tag = match (c.pass, c.informational) {
                    (true, _) => "PASS",
                    (false, false) => "FAIL",
                    (false, true) => "INFO",
                };
                let _ = writeln!(s, "  {tag} {}: {} (tolerance {:e})", c.name, fmt_num(c.value), c.tolerance);
            }
            for tb in &t.tables {
                let _ = writeln!(s, "  table {}_{}.csv: {} rows", t.file_stem(), tb.name, tb.rows.len());
            }
            for n in &t.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        let status = if self.failed() { "FAILED" } else { "OK" };
        let _ = writeln!(s, "\nstatus: {status}");
        s
    }

    /// Write every table and report.txt into `dir`; returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut out = Vec::new();
        for t in &self.tasks {
            for tb in &t.tables {
                let path = dir.join(format!("{}_{}.csv", t.file_stem(), tb.name));
                fs::write(&path, tb.to_csv()?).with_context(|| format!("writing {}", path.display()))?;
                out.push(path);
            }
        }
        let path = dir.join("report.txt");
        fs::write(&path, self.text()).with_context(|| format!("writing {}", path.display()))?;
        out.push(path);
        Ok(out)
    }
}
