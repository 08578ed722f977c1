use std::collections::BTreeMap;
use std::f64::consts::PI;

use geodyn_cli::expr::{parse, Scope};
use geodyn_core::HyperDual;
use proptest::prelude::*;

fn scope() -> Scope {
    let mut k = BTreeMap::new();
    k.insert("b".to_string(), 0.5);
    Scope::new(vec!["r".into(), "theta".into()], k)
}

fn ev(src: &str, x: &[f64]) -> f64 {
    parse(src, &scope()).unwrap().eval_f64(x)
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(ev("1 + 2 * 3", &[0.0, 0.0]), 7.0);
    assert_eq!(ev("(1 + 2) * 3", &[0.0, 0.0]), 9.0);
    assert_eq!(ev("2 ^ 3 ^ 2", &[0.0, 0.0]), 512.0);
    assert_eq!(ev("-2 ^ 2", &[0.0, 0.0]), -4.0);
    assert_eq!(ev("8 / 4 / 2", &[0.0, 0.0]), 1.0);
    assert_eq!(ev("1 - 2 - 3", &[0.0, 0.0]), -4.0);
    assert_eq!(ev("2.5e-1 * 4", &[0.0, 0.0]), 1.0);
}

#[test]
fn names_functions_and_constants() {
    let x = [1.7, 0.4];
    assert_eq!(ev("r", &x), 1.7);
    assert_eq!(ev("x1", &x), 0.4);
    assert_eq!(ev("b * r", &x), 0.85);
    assert_eq!(ev("pi", &x), PI);
    assert_eq!(ev("sin(theta)", &x), 0.4f64.sin());
    assert!((ev("r^2 * sin(theta)^2 + sqrt(exp(r))", &x) - (1.7f64.powi(2) * 0.4f64.sin().powi(2) + 0.85f64.exp())).abs() < 1e-15);
    assert!(parse("cos(0)", &scope()).unwrap().is_constant());
    assert!(!parse("cos(r)", &scope()).unwrap().is_constant());
}

#[test]
fn errors_carry_columns() {
    for (src, col) in [("1 +", 4), ("sin(r", 6), ("r * q", 5), ("tan(r)", 1), ("2 $ 3", 3), ("", 1), ("(r))", 4)] {
        let e = parse(src, &scope()).unwrap_err();
        assert_eq!(e.at + 1, col, "{src}: {e}");
        assert!(e.to_string().starts_with(&format!("column {col}:")), "{e}");
    }
}

#[test]
fn dual_derivatives_match_finite_differences() {
    let e = parse("r^3 * cos(theta) / (1 + r*theta) + sqrt(r) * exp(-theta^2)", &scope()).unwrap();
    let (r, t) = (1.3, 0.7);
    let d = e.eval(&[HyperDual::new(r, 1.0, 0.0, 0.0), HyperDual::new(t, 0.0, 1.0, 0.0)]);
    let f = |a: f64, b: f64| e.eval_f64(&[a, b]);
    let h = 1e-5;
    let fr = (f(r + h, t) - f(r - h, t)) / (2.0 * h);
    let ft = (f(r, t + h) - f(r, t - h)) / (2.0 * h);
    let frt = (f(r + h, t + h) - f(r + h, t - h) - f(r - h, t + h) + f(r - h, t - h)) / (4.0 * h * h);
    assert!((d.re - f(r, t)).abs() < 1e-15);
    assert!((d.e1 - fr).abs() < 1e-8);
    assert!((d.e2 - ft).abs() < 1e-8);
    assert!((d.e12 - frt).abs() < 1e-5);
}

proptest! {
    #[test]
    fn polynomials_evaluate_like_rust(c in proptest::collection::vec(-5.0f64..5.0, 4), r in -2.0f64..2.0, t in -2.0f64..2.0) {
        let src = format!("{} + {} * r - {} * theta^2 + {} * r * theta^3", c[0], c[1], c[2], c[3]);
        let want = c[0] + c[1] * r - c[2] * t * t + c[3] * r * t.powi(3);
        let got = ev(&src, &[r, t]);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn number_literals_round_trip(v in -1e6f64..1e6) {
        let src = format!("{v:e}");
        prop_assert_eq!(ev(&src, &[0.0, 0.0]), v);
    }
}
