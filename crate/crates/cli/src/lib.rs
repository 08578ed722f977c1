//! Scenario runner for `geodyn-core`: config parsing and validation, task
//! execution, CSV and text reports.

pub mod builtins;
pub mod config;
pub mod expr;
pub mod report;
pub mod run;
pub mod scenario;

use std::path::Path;

use config::{Diagnostic, ParseFailure};
use scenario::Scenario;

/// Config text and a label for it. A path that exists wins over a builtin of
/// the same name; `builtin:NAME` always means the builtin.
pub fn read_source(arg: &str) -> anyhow::Result<(String, String)> {
    if !arg.starts_with("builtin:") && Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| anyhow::anyhow!("reading {arg}: {e}"))?;
        return Ok((arg.to_string(), text));
    }
    match builtins::find(arg) {
        Some(b) => Ok((format!("builtin:{}", b.name), b.config.to_string())),
        None => anyhow::bail!("no config file or builtin scenario named '{arg}' (see `geodyn list-builtins`)"),
    }
}

#[derive(Debug)]
pub enum LoadError {
    Parse(ParseFailure),
    Invalid(Vec<Diagnostic>),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(p) => write!(f, "parse error: {p}"),
            LoadError::Invalid(ds) => {
                write!(f, "{} validation error(s)", ds.len())?;
                for d in ds {
                    write!(f, "\n  {d}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for LoadError {}

pub fn load(text: &str, grid: Option<usize>, seed: Option<u64>) -> Result<Scenario, LoadError> {
    let raw = config::parse_toml(text).map_err(LoadError::Parse)?;
    scenario::validate(&raw, grid, seed).map_err(LoadError::Invalid)
}
