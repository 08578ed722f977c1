use std::fs;
use std::path::Path;

use geodyn_cli::report::Cell;
use geodyn_cli::{load, run};

#[test]
fn shipped_scenarios_run_clean() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let s = load(&text, None, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let r = run::run(&s);
        assert!(!r.failed(), "{}", r.text());
        seen += 1;
    }
    assert!(seen >= 2);
}

#[test]
fn hyperbolic_plane_has_curvature_minus_two() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/hyperbolic.toml");
    let s = load(&fs::read_to_string(path).unwrap(), None, None).unwrap();
    let r = run::run(&s);
    let t = r.tasks.iter().find(|t| t.kind == "curvature-at-points").unwrap();
    let tb = t.table("scalars").unwrap();
    let i = tb.column("R").unwrap();
    for row in &tb.rows {
        let Cell::Num(v) = row[i] else { panic!() };
        assert!((v + 2.0).abs() < 1e-9, "{v}");
    }
}
