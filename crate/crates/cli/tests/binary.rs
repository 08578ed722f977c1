use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn geodyn(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_geodyn"));
    c.args(args);
    match threads {
        Some(t) => c.env("GEODYN_THREADS", t),
        None => c.env_remove("GEODYN_THREADS"),
    };
    c.output().expect("spawn geodyn")
}

fn out_dir(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join("geodyn-binary").join(name);
    let _ = fs::remove_dir_all(&d);
    d
}

fn csvs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

#[test]
fn exit_codes() {
    assert_eq!(geodyn(&["list-builtins"], None).status.code(), Some(0));
    assert_eq!(geodyn(&["validate", "builtin:sphere2"], None).status.code(), Some(0));
    assert_eq!(geodyn(&["validate", "no-such-scenario"], None).status.code(), Some(1));

    let bad = Path::new(env!("CARGO_TARGET_TMPDIR")).join("geodyn-bad.toml");
    fs::write(&bad, "schema = \"geodyn-config-v1\"\n[[tasks]]\nkind = \"axioms\"\n").unwrap();
    let o = geodyn(&["validate", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tasks[0]"));

    let dir = out_dir("broken");
    let o = geodyn(&["run", "two-point-broken", "--out", dir.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    let report = fs::read_to_string(dir.join("report.txt")).unwrap();
    assert!(report.contains("FAIL γD = −Dγ: 1.5000000000000000e0"), "{report}");
    assert!(report.contains("seed: 10"));

    let d = out_dir("nogrid");
    assert_eq!(geodyn(&["run", "two-point", "--grid", "0", "--out", d.to_str().unwrap()], None).status.code(), Some(0));
    assert_eq!(geodyn(&["run", "sphere2", "--grid", "1", "--out", out_dir("g1").to_str().unwrap()], None).status.code(), Some(2));
    assert_eq!(geodyn(&["run", "two-point", "--out", "/dev/null/x"], Some("0")).status.code(), Some(1));
}

#[test]
fn show_round_trips() {
    let o = geodyn(&["show", "abelian-field"], None);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(geodyn_cli::load(&text, None, None).is_ok());
}

#[test]
fn identical_runs_write_identical_csv() {
    for name in ["sm-trace-check", "sphere2", "sm-leptons", "abelian-field"] {
        let a = out_dir(&format!("{name}-a"));
        let b = out_dir(&format!("{name}-b"));
        let oa = geodyn(&["run", name, "--out", a.to_str().unwrap()], Some("1"));
        let ob = geodyn(&["run", name, "--out", b.to_str().unwrap()], Some("3"));
        assert!(oa.status.success() && ob.status.success(), "{name}: {}", String::from_utf8_lossy(&oa.stderr));
        let (ca, cb) = (csvs(&a), csvs(&b));
        assert!(!ca.is_empty());
        assert_eq!(ca.len(), cb.len());
        for ((na, da), (nb, db)) in ca.iter().zip(&cb) {
            assert_eq!(na, nb);
            assert!(da == db, "{name}/{na} differs between runs");
        }
        let report = fs::read_to_string(a.join("report.txt")).unwrap();
        assert!(report.contains("threads: 1"), "{report}");
    }
}

#[test]
fn seed_changes_random_checks_only() {
    let a = out_dir("seed-a");
    let b = out_dir("seed-b");
    geodyn(&["run", "sm-leptons", "--out", a.to_str().unwrap(), "--seed", "5"], None);
    geodyn(&["run", "sm-leptons", "--out", b.to_str().unwrap(), "--seed", "6"], None);
    let read = |d: &Path, f: &str| fs::read_to_string(d.join(f)).unwrap();
    assert_eq!(read(&a, "task00_axioms_axioms.csv"), read(&b, "task00_axioms_axioms.csv"));
    assert_ne!(read(&a, "task00_axioms_structure.csv"), read(&b, "task00_axioms_structure.csv"));
    assert!(read(&a, "report.txt").contains("seed: 5"));
}
