//! Builtin scenarios, shipped as config text so `geodyn show NAME` prints a
//! working starting point.

pub struct Builtin {
    pub name: &'static str,
    pub summary: &'static str,
    pub config: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "flat-empty",
        summary: "flat R^4, no fields: zero curvature, action is the cosmological term only",
        config: r#"schema = "geodyn-config-v1"
name = "flat-empty"
seed = 1

[chart]
dimension = 4
lower = [0.0, 0.0, 0.0, 0.0]
upper = [1.0, 1.0, 1.0, 1.0]
periodic = [false, false, false, false]
grid = 3

[geometry]
builtin = "flat"

[[tasks]]
kind = "curvature-at-points"
points = [[0.5, 0.5, 0.5, 0.5], [0.1, 0.9, 0.3, 0.7]]

[[tasks]]
kind = "action"

[[tasks]]
kind = "field-equations"
form = "gravity"
tau0 = 0.0
points = [[0.5, 0.5, 0.5, 0.5]]
"#,
    },
    Builtin {
        name: "sphere2",
        summary: "unit 2-sphere: Ricci scalar 2/r^2, great-circle geodesic, Riemannian limit",
        config: r#"schema = "geodyn-config-v1"
name = "sphere2"
seed = 2

[chart]
lower = [0.4, 0.0]
upper = [2.7, 6.283185307179586]
periodic = [false, true]
grid = 6

[geometry]
builtin = "sphere2"
radius = 1.0

[[tasks]]
kind = "curvature-at-points"

[[tasks]]
kind = "geodesic"
x0 = [1.5707963267948966, 0.0]
v0 = [0.6, 0.8]
dtau = 0.01
steps = 10000

[[tasks]]
kind = "limit-check"
"#,
    },
    Builtin {
        name: "polar",
        summary: "flat plane in polar coordinates: zero curvature and the Riemannian limit",
        config: r#"schema = "geodyn-config-v1"
name = "polar"
seed = 3

[chart]
lower = [0.5, 0.0]
upper = [2.0, 6.283185307179586]
periodic = [false, true]
grid = 6

[geometry]
builtin = "polar"

[[tasks]]
kind = "curvature-at-points"

[[tasks]]
kind = "limit-check"
"#,
    },
    Builtin {
        name: "schwarzschild",
        summary: "Schwarzschild exterior, m = 1: Ricci-flat check, circular orbit at r = 8, Riemannian limit",
        config: r#"schema = "geodyn-config-v1"
name = "schwarzschild"
seed = 4

[chart]
lower = [0.0, 3.0, 0.4, 0.0]
upper = [2.0, 10.0, 2.7, 6.283185307179586]
periodic = [false, false, false, true]
grid = 3

[geometry]
builtin = "schwarzschild"
mass = 1.0

[[tasks]]
kind = "curvature-at-points"
points = [
  [0, 3, 0.4, 0],
  [0.1, 3.35, 0.51, 0.3],
  [0.2, 3.7, 0.62, 0.6],
  [0.3, 4.05, 0.73, 0.9],
  [0.4, 4.4, 0.84, 1.2],
  [0.5, 4.75, 0.95, 1.5],
  [0.6, 5.1, 1.06, 1.8],
  [0.7, 5.45, 1.17, 2.1],
  [0.8, 5.8, 1.28, 2.4],
  [0.9, 6.15, 1.39, 2.7],
  [1, 6.5, 1.5, 3],
  [1.1, 6.85, 1.61, 3.3],
  [1.2, 7.2, 1.72, 3.6],
  [1.3, 7.55, 1.83, 3.9],
  [1.4, 7.9, 1.94, 4.2],
  [1.5, 8.25, 2.05, 4.5],
  [1.6, 8.6, 2.16, 4.8],
  [1.7, 8.95, 2.27, 5.1],
  [1.8, 9.3, 2.38, 5.4],
  [1.9, 9.65, 2.49, 5.7],
]

# circular orbit: u^t = (1 - 3m/r)^(-1/2), u^phi = sqrt(m/r^3) u^t
[[tasks]]
kind = "geodesic"
x0 = [0.0, 8.0, 1.5707963267948966, 0.0]
v0 = [1.2649110640673518, 0.0, 0.0, 0.05590169943749474]
dtau = 0.5
steps = 10000

[[tasks]]
kind = "field-equations"
form = "gravity"
points = [[1.0, 6.0, 1.2, 0.5]]

[[tasks]]
kind = "limit-check"
"#,
    },
    Builtin {
        name: "riemannian-limit",
        summary: "S^2 x R^2 with the spin connection: Einstein-Hilbert and quadratic-curvature terms",
        config: r#"schema = "geodyn-config-v1"
name = "riemannian-limit"
seed = 5

[chart]
lower = [0.5, 0.0, 0.0, 0.0]
upper = [2.6, 6.283185307179586, 1.0, 1.0]
periodic = [false, true, false, false]
grid = 3

[geometry]
builtin = "sphere2xflat"
radius = 1.0

[[tasks]]
kind = "limit-check"

[[tasks]]
kind = "action"
"#,
    },
    Builtin {
        name: "abelian-field",
        summary: "constant hypercharge field strength B_01 = b on flat R^4: a4 against the hand value",
        config: r#"schema = "geodyn-config-v1"
name = "abelian-field"
seed = 6

[parameters]
b = 0.8

[chart]
dimension = 4
lower = [0.0, 0.0, 0.0, 0.0]
upper = [1.0, 1.0, 1.0, 1.0]
periodic = [false, false, false, false]
grid = 2

[geometry]
builtin = "flat"

[gauge]
g1 = 0.36
B = ["-0.5*b*x1", "0.5*b*x0", "0", "0"]

[[tasks]]
kind = "action"

[[tasks]]
kind = "field-equations"
form = "sm"
points = [[0.3, 0.6, 0.2, 0.9]]
"#,
    },
    Builtin {
        name: "sm-trace-check",
        summary: "Standard-Model gauge fields on flat R^4: displayed gauge-squared coefficients vs brute-force traces",
        config: r#"schema = "geodyn-config-v1"
name = "sm-trace-check"
seed = 7

[chart]
dimension = 4
coordinates = ["t", "x", "y", "z"]
lower = [-1.0, -1.0, -1.0, -1.0]
upper = [1.0, 1.0, 1.0, 1.0]
periodic = [false, false, false, false]

[geometry]
builtin = "flat"

[gauge]
g1 = 0.36
g2 = 0.65
g3 = 1.2
B = ["0.3*y", "-0.2*t + 0.1*z", "0.4*sin(x)", "0.05*t*x"]
W = [
  ["0.2*x", "0.1*sin(y)", "0.3*z", "0.25"],
  ["0.15", "0.2*t", "-0.1*x*y", "0.3*cos(z)"],
  ["0.1*z", "0.3", "0.2*t", "-0.2*y"],
]
G = [
  ["0.1*x", "0.2", "0.1*z", "0.05*t"],
  ["0.3", "0.1*y", "0", "0.2*x"],
  ["0.05*t", "0.15*z", "0.2", "0"],
  ["0", "0.2*t", "0.1*x", "0.15"],
  ["0.2*y", "0", "0.1", "0.1*z"],
  ["0.1", "0.05*x", "0.2*y", "0"],
  ["0", "0.3", "0.05*t", "0.1*y"],
  ["0.15*z", "0.1", "0", "0.2*t"],
]

[higgs]
H = ["0.5 + 0.1*x", "0.2*y", "0.1*z", "0.3"]
c = 0.8
alpha = 1.0

[[tasks]]
kind = "trace-oracle"
points = [[0.1, 0.2, -0.3, 0.4], [-0.5, 0.3, 0.2, -0.1]]

[[tasks]]
kind = "field-equations"
form = "sm"
points = [[0.1, 0.2, -0.3, 0.4]]
"#,
    },
    Builtin {
        name: "two-point",
        summary: "two-point finite space C^2: all claimed axioms, Hermitian fluctuation, gauge covariance reported",
        config: r#"schema = "geodyn-config-v1"
name = "two-point"
seed = 8

[finite_triple]
builtin = "two-point"
mass = 0.75

[[tasks]]
kind = "axioms"
tolerance = 1e-12
"#,
    },
    Builtin {
        name: "two-point-doubled",
        summary: "particle/antiparticle two-point space C^4: axioms including first order, gauge covariance",
        config: r#"schema = "geodyn-config-v1"
name = "two-point-doubled"
seed = 9

[finite_triple]
builtin = "two-point-doubled"
mass = 0.75

[[tasks]]
kind = "axioms"
tolerance = 1e-12
"#,
    },
    Builtin {
        name: "two-point-broken",
        summary: "two-point space with grading replaced by the identity: gamma D = -D gamma fails by 2|m| (exit 3)",
        config: r#"schema = "geodyn-config-v1"
name = "two-point-broken"
seed = 10

[finite_triple]
builtin = "two-point-broken"
mass = 0.75

[[tasks]]
kind = "axioms"
tolerance = 1e-12
"#,
    },
    Builtin {
        name: "sm-leptons",
        summary: "lepton sector of the Standard-Model finite space: axioms, fluctuation, gauge covariance",
        config: r#"schema = "geodyn-config-v1"
name = "sm-leptons"
seed = 11

[finite_triple]
builtin = "sm-leptons"
mass = 0.5

[[tasks]]
kind = "axioms"
tolerance = 1e-12
"#,
    },
];

/// Accepts `NAME` or `builtin:NAME`.
pub fn find(name: &str) -> Option<&'static Builtin> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    BUILTINS.iter().find(|b| b.name == name)
}
