use std::f64::consts::PI;

use geodyn_core::geometry::{self, builtins, GeneralizedMetric, GeodesicState, VolumeMode};
use geodyn_core::{ChartField, DerivativeMode, Error, HyperDual, Point, Signature, Slot};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

/// Christoffel symbols from central differences of plain metric samples.
fn christoffel_fd(g: &GeneralizedMetric, p: &Point) -> Vec<f64> {
    let n = g.dim();
    let h = 1e-5;
    let gm = |q: &Point| g.at(q).unwrap();
    let mp = gm(p);
    let mut dg = vec![0.0; n * n * n];
    for l in 0..n {
        let a = gm(&p.shifted(l, h)).g;
        let b = gm(&p.shifted(l, -h)).g;
        for i in 0..n {
            for j in 0..n {
                dg[(l * n + i) * n + j] = (a[(i, j)] - b[(i, j)]) / (2.0 * h);
            }
        }
    }
    let mut out = vec![0.0; n * n * n];
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += 0.5
                        * mp.inv[(m, l)]
                        * (dg[(b * n + l) * n + a] + dg[(a * n + l) * n + b] - dg[(l * n + a) * n + b]);
                }
                out[(m * n + a) * n + b] = s;
            }
        }
    }
    out
}

#[test]
fn polar_christoffel_symbols() {
    let g = builtins::polar().unwrap().metric;
    let r = 1.7;
    let c = g.christoffel(&pt(&[r, 0.4])).unwrap();
    assert!((c.get(0, 1, 1) + r).abs() < 1e-14);
    assert!((c.get(1, 0, 1) - 1.0 / r).abs() < 1e-14);
    assert!((c.get(1, 1, 0) - 1.0 / r).abs() < 1e-14);
    let fd = christoffel_fd(&g, &pt(&[r, 0.4]));
    for (a, b) in c.values.iter().zip(&fd) {
        assert!((a - b).abs() < 1e-6);
    }
}

#[test]
fn sphere_christoffel_matches_closed_form_and_differences() {
    let g = builtins::sphere2(1.0).unwrap().metric;
    let th = 0.9;
    let p = pt(&[th, 0.3]);
    let c = g.christoffel(&p).unwrap();
    assert!((c.get(0, 1, 1) + th.sin() * th.cos()).abs() < 1e-14);
    assert!((c.get(1, 0, 1) - th.cos() / th.sin()).abs() < 1e-14);
    let fd = christoffel_fd(&g, &p);
    for (a, b) in c.values.iter().zip(&fd) {
        assert!((a - b).abs() < 1e-6);
    }
    assert_eq!(c.symmetry_residual(), 0.0);
}

#[test]
fn christoffel_symbols_are_metric_compatible() {
    // ∇_λ γ_μν = ∂_λ γ_μν − Γ^σ_{λμ} γ_σν − Γ^σ_{λν} γ_μσ
    let g = builtins::schwarzschild(1.0).unwrap().metric;
    let p = pt(&[0.0, 7.0, 1.1, 0.2]);
    let c = g.christoffel(&p).unwrap();
    let (mp, jet) = g.jet(&p, 1).unwrap();
    let n = 4;
    for l in 0..n {
        for m in 0..n {
            for v in 0..n {
                let mut s = jet.d1(l, m * n + v);
                for sg in 0..n {
                    s -= c.get(sg, l, m) * mp.g[(sg, v)] + c.get(sg, l, v) * mp.g[(m, sg)];
                }
                assert!(s.abs() < 1e-12, "{s}");
            }
        }
    }
}

#[test]
fn flat_metric_has_no_curvature() {
    let g = builtins::flat(Signature::lorentzian(4)).unwrap().metric;
    let cs = g.riemann(&pt(&[0.1, 0.2, 0.3, 0.4])).unwrap();
    assert!(cs.riemann.iter().all(|v| v.abs() < 1e-10));
    assert!(cs.christoffel.values.iter().all(|v| *v == 0.0));
}

#[test]
fn sphere_scalar_curvature_is_two_over_r_squared() {
    for r in [1.0, 2.0, 5.0] {
        let g = builtins::sphere2(r).unwrap().metric;
        for th in [0.3, 1.0, 2.2] {
            let cs = g.riemann(&pt(&[th, 0.7])).unwrap();
            let want = 2.0 / (r * r);
            assert!(((cs.scalar - want) / want).abs() < 1e-6, "r={r} θ={th}: {}", cs.scalar);
            // finite-difference mode as an independent path
            let fd = GeneralizedMetric::new(g.field().clone().with_mode(DerivativeMode::FiniteDifference).unwrap())
                .unwrap()
                .riemann(&pt(&[th, 0.7]))
                .unwrap();
            assert!(((fd.scalar - want) / want).abs() < 1e-4);
        }
    }
}

#[test]
fn schwarzschild_is_ricci_flat() {
    let g = builtins::schwarzschild(1.0).unwrap().metric;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let p = pt(&[rng.gen_range(-1.0..1.0), rng.gen_range(4.0..20.0), rng.gen_range(0.3..2.8), rng.gen_range(0.0..6.0)]);
        let cs = g.riemann(&p).unwrap();
        let worst = cs.ricci.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(worst < 1e-6, "{worst}");
        assert!(cs.kretschmann() > 0.0);
        // K = 48 m²/r⁶
        let r = p.coords()[1];
        assert!((cs.kretschmann() - 48.0 / r.powi(6)).abs() < 1e-10);
    }
}

fn random_metric(seed: u64) -> GeneralizedMetric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Vec<f64> = (0..30).map(|_| rng.gen_range(-0.2..0.2)).collect();
    GeneralizedMetric::from_fn(3, move |x| {
        let mut out = vec![HyperDual::ZERO; 9];
        let mut k = 0;
        for i in 0..3 {
            for j in i..3 {
                let base = if i == j { HyperDual::constant(1.5) } else { HyperDual::ZERO };
                let v = base + (x[0] * c[k] + x[1] * c[k + 1] + x[2] * c[k + 2]).sin() + x[i] * x[j] * c[k + 3] * 0.5;
                out[i * 3 + j] = v;
                out[j * 3 + i] = v;
                k += 4;
            }
        }
        out
    })
    .unwrap()
}

#[test]
fn riemann_symmetries_on_random_metrics() {
    for seed in 0..5 {
        let g = random_metric(seed);
        let cs = g.riemann(&pt(&[0.3, -0.2, 0.5])).unwrap();
        let scale = cs.riemann.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        assert!(cs.antisymmetry_residual() < 1e-10 * scale);
        assert!(cs.bianchi_residual() < 1e-8);
        // pair symmetry R_ρμνλ = R_νλρμ
        let lo = cs.riemann_lower();
        let n = 3;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let x = lo[((a * n + b) * n + c) * n + d];
                        let y = lo[((c * n + d) * n + a) * n + b];
                        assert!((x - y).abs() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn simplified_ricci_on_unimodular_charts() {
    let sphere = builtins::sphere2_unimodular().unwrap().metric;
    let p = pt(&[0.35, 1.2]);
    let full = sphere.riemann(&p).unwrap();
    let simple = sphere.ricci_simplified(&p);
    // Γ^β_{βα} = ∂_α ln√γ = 0 only holds exactly because det γ = 1
    let simple = simple.unwrap();
    for (a, b) in simple.iter().zip(&full.ricci) {
        assert!((a - b).abs() < 1e-8);
    }
    let mp = sphere.at(&p).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!((simple[i * 2 + j] - mp.g[(i, j)]).abs() < 1e-12);
        }
    }

    let a = DMatrix::from_row_slice(3, 3, &[1.0, 0.7, -0.3, 0.0, 1.0, 0.4, 0.0, 0.0, 1.0]);
    let skew = builtins::skewed_flat(&a, Signature::euclidean(3)).unwrap().metric;
    let r = skew.ricci_simplified(&pt(&[0.1, 2.0, -1.0])).unwrap();
    assert!(r.iter().all(|v| v.abs() < 1e-10));

    let polar = builtins::polar().unwrap().metric;
    assert!(matches!(polar.ricci_simplified(&pt(&[2.0, 0.1])), Err(Error::CoordinateCondition(_))));
}

#[test]
fn volume_elements() {
    let mink = builtins::flat(Signature::lorentzian(4)).unwrap().metric;
    let v = mink.volume_element(&pt(&[0.0; 4])).unwrap();
    assert_eq!(v.value, 1.0);
    assert_eq!(v.mode, VolumeMode::Lorentzian);
    let g = GeneralizedMetric::from_fn(4, |x| {
        let mut out = vec![HyperDual::ZERO; 16];
        let s = x[2].sin();
        out[0] = HyperDual::constant(-1.0);
        out[5] = x[1] * x[1];
        out[10] = x[1] * x[1] * s * s;
        out[15] = HyperDual::ONE;
        out
    })
    .unwrap();
    let (r, th) = (3.0, 0.8);
    let v = g.volume_element(&pt(&[0.0, r, th, 0.0])).unwrap();
    assert!((v.value - r * r * th.sin()).abs() < 1e-13);
    let sing = GeneralizedMetric::from_fn(2, |_| vec![HyperDual::ONE, HyperDual::ONE, HyperDual::ONE, HyperDual::ONE]).unwrap();
    assert!(matches!(sing.volume_element(&pt(&[0.0, 0.0])), Err(Error::SingularMatrix { .. })));
}

#[test]
fn metric_from_vielbein_matches_loop_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let e = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0)) + DMatrix::identity(4, 4) * 2.0;
        let sig = Signature::lorentzian(4);
        let v = geometry::Vielbein::constant(&e, sig.clone()).unwrap();
        let g = geometry::metric_from_vielbein(&v).unwrap().at(&pt(&[0.0; 4])).unwrap().g;
        for m in 0..4 {
            for n in 0..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        let eta = if a == b { sig.get(a) } else { 0.0 };
                        s += e[(a, m)] * e[(b, n)] * eta;
                    }
                }
                assert!((g[(m, n)] - s).abs() < 1e-14);
            }
        }
    }
    let polar = builtins::polar().unwrap();
    let g = geometry::metric_from_vielbein(&polar.vielbein).unwrap().at(&pt(&[3.0, 1.0])).unwrap().g;
    assert_eq!(g[(1, 1)], 9.0);
}

#[test]
fn vielbein_from_metric_round_trip() {
    let g = random_metric(11);
    let p = pt(&[0.2, 0.1, -0.3]);
    let e = geometry::vielbein_from_metric(&g, &p).unwrap();
    let back = geometry::metric_from_vielbein(&e).unwrap();
    let a = g.riemann(&p).unwrap();
    let b = back.riemann(&p).unwrap();
    for (x, y) in a.riemann.iter().zip(&b.riemann) {
        assert!((x - y).abs() < 1e-10);
    }
    let sw = builtins::schwarzschild(1.0).unwrap().metric;
    let e = geometry::vielbein_from_metric(&sw, &pt(&[0.0, 6.0, 1.0, 0.0])).unwrap();
    assert_eq!(e.signature().signs(), &[-1.0, 1.0, 1.0, 1.0]);
}

#[test]
fn sphere_spin_connection() {
    let s = builtins::sphere2(1.0).unwrap();
    let th = 0.8;
    let p = pt(&[th, 0.4]);
    let w = geometry::spin_connection(&s.vielbein, &p).unwrap();
    assert!((w.get(0, 1, 1) + th.cos()).abs() < 1e-12);
    assert!((w.get(1, 0, 1) - th.cos()).abs() < 1e-12);
    assert!(w.get(0, 1, 0).abs() < 1e-12);
    assert!(geometry::tetrad_residual(&s.vielbein, &p).unwrap() < 1e-8);

    let flat = builtins::flat(Signature::euclidean(3)).unwrap();
    let w = geometry::spin_connection(&flat.vielbein, &pt(&[1.0, 2.0, 3.0])).unwrap();
    assert!(w.values.iter().all(|v| *v == 0.0));
}

fn random_vielbein(seed: u64, sig: Signature) -> geometry::Vielbein {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sig.dim();
    let c: Vec<f64> = (0..n * n * 2).map(|_| rng.gen_range(-0.3..0.3)).collect();
    geometry::Vielbein::from_fn(sig, move |x| {
        let mut out = vec![HyperDual::ZERO; n * n];
        for a in 0..n {
            for m in 0..n {
                let k = a * n + m;
                let base = if a == m { 2.0 } else { 0.0 };
                out[k] = (x[m] * c[2 * k] + x[a] * c[2 * k + 1]).sin() + base;
            }
        }
        out
    })
    .unwrap()
}

#[test]
fn random_frames_satisfy_tetrad_postulate() {
    for seed in 0..4 {
        for sig in [Signature::euclidean(3), Signature::lorentzian(4)] {
            let e = random_vielbein(seed, sig);
            let p = Point::new(vec![0.3; e.dim()]).unwrap();
            let w = geometry::spin_connection(&e, &p).unwrap();
            assert!(w.antisymmetry_residual() < 1e-10);
            assert!(geometry::tetrad_residual(&e, &p).unwrap() < 1e-8);
        }
    }
}

#[test]
fn flat_frame_against_gauge_connection() {
    let n = 3;
    let e = builtins::flat(Signature::euclidean(n)).unwrap().vielbein;
    let vals: Vec<f64> = (0..27).map(|k| (k as f64 * 0.37).sin()).collect();
    let conn = ChartField::constant(n, vec![n, n, n], vec![Slot::frame_up(), Slot::frame_up(), Slot::coord_down()], vals.clone());
    let r = geometry::compatibility_residual(&e, &conn, &pt(&[0.0; 3])).unwrap();
    for a in 0..n {
        for m in 0..n {
            for v in 0..n {
                // −η_bc 𝒜^{ba}_ν δ^c_μ = −𝒜^{μa}_ν
                let want = -vals[(m * n + a) * n + v];
                assert!((r.get(&[a, m, v]) - want).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn frame_transport_resubstitution() {
    let n = 3;
    let conn = ChartField::from_dual(n, vec![n, n, n], vec![Slot::frame_up(), Slot::frame_up(), Slot::coord_down()], |x| {
        let mut out = vec![HyperDual::ZERO; 27];
        for a in 0..3 {
            for b in 0..3 {
                for m in 0..3 {
                    out[(a * 3 + b) * 3 + m] = (x[m] * (a as f64 - b as f64) + 0.1 * (a + 2 * b) as f64).sin() * 0.5;
                }
            }
        }
        out
    });
    let tr = geometry::transport_frame(&conn, &Signature::euclidean(n), &[0.1, 0.2, 0.3], &[1.0, -0.5, 0.25], &DMatrix::identity(n, n), 1.0, 400).unwrap();
    assert!(tr.residual(&conn).unwrap() < 1e-6);
}

#[test]
fn dirac_matrix_anticommutators() {
    let sig = Signature::euclidean(4);
    let flat = geometry::clifford_basis(&sig).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            let ac = &flat[a] * &flat[b] + &flat[b] * &flat[a];
            let want = if a == b { 2.0 } else { 0.0 };
            for i in 0..4 {
                for j in 0..4 {
                    let t = if i == j { want } else { 0.0 };
                    assert!((ac[(i, j)].re - t).abs() < 1e-15 && ac[(i, j)].im.abs() < 1e-15);
                }
            }
        }
    }
    let e = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0, 1.0, 1.0]));
    let v = geometry::Vielbein::constant(&e, sig).unwrap();
    let d = geometry::dirac_matrices(&v, &pt(&[0.0; 4])).unwrap();
    let g00 = d.anticommutator(0, 0);
    assert!((g00[(0, 0)].re - 0.5).abs() < 1e-15);
    assert!(d.clifford_residual() < 1e-12);

    for sig in [Signature::euclidean(4), Signature::lorentzian(4)] {
        let e = random_vielbein(5, sig);
        let d = geometry::dirac_matrices(&e, &pt(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        assert!(d.clifford_residual() < 1e-12);
        assert!(d.literal_residual() > 1e-3);
    }
    assert!(matches!(geometry::clifford_basis(&Signature::euclidean(3)), Err(Error::Unsupported(_))));
    assert!((geometry::sigma_squared(&Signature::euclidean(4)).unwrap() - 12.0).abs() < 1e-12);
}

#[test]
fn flat_geodesic_is_a_straight_line() {
    let g = builtins::flat(Signature::euclidean(3)).unwrap().metric;
    let s0 = GeodesicState::new(vec![1.0, 0.0, -1.0], vec![0.5, 0.25, 1.0]).unwrap();
    let tr = geometry::geodesic_integrate(&g, &s0, 0.1, 100);
    let end = tr.last();
    assert!((end.x[0] - 6.0).abs() < 1e-12 && (end.x[2] - 9.0).abs() < 1e-12);
}

#[test]
fn sphere_great_circle_closes() {
    let g = builtins::sphere2(1.0).unwrap().metric;
    let s0 = GeodesicState::new(vec![PI / 2.0, 0.0], vec![0.0, 1.0]).unwrap();
    let steps = 10_000;
    let tr = geometry::geodesic_integrate(&g, &s0, 2.0 * PI / steps as f64, steps);
    assert!(tr.failure.is_none());
    let end = tr.last();
    assert!((end.x[0] - PI / 2.0).abs() < 1e-5);
    assert!((end.x[1] - 2.0 * PI).abs() < 1e-5);
    assert!(tr.states.iter().all(|s| (s.x[0] - PI / 2.0).abs() < 1e-12));
    assert!(tr.norm_drift(&g).unwrap() < 1e-6);
}

#[test]
fn schwarzschild_circular_orbit() {
    let (m, r) = (1.0f64, 10.0f64);
    let g = builtins::schwarzschild(m).unwrap().metric;
    let omega = (m / r.powi(3)).sqrt();
    let vt = 1.0 / (1.0 - 3.0 * m / r).sqrt();
    let s0 = GeodesicState::new(vec![0.0, r, PI / 2.0, 0.0], vec![vt, 0.0, 0.0, omega * vt]).unwrap();
    let tr = geometry::geodesic_integrate(&g, &s0, 0.01, 10_000);
    assert!(tr.norm_drift(&g).unwrap() < 1e-6);
    let end = tr.last();
    assert!((end.x[1] - r).abs() < 1e-6);
    let measured = end.x[3] / end.x[0];
    assert!((measured * measured - m / r.powi(3)).abs() / (m / r.powi(3)) < 1e-4);
}

#[test]
fn geodesic_reports_partial_trajectory_at_singularity() {
    // radial infall in polar coordinates hits r = 0
    let g = builtins::polar().unwrap().metric;
    let s0 = GeodesicState::new(vec![1.0, 0.0], vec![-1.0, 0.0]).unwrap();
    let tr = geometry::geodesic_integrate(&g, &s0, 0.25, 10);
    assert!(tr.failure.is_some());
    assert!(tr.states.len() > 1 && tr.states.len() < 11);
}

#[test]
fn geodesic_step_refinement() {
    let g = builtins::sphere2(1.0).unwrap().metric;
    let s0 = GeodesicState::new(vec![1.0, 0.0], vec![0.3, 0.8]).unwrap();
    let (_, change) = geometry::geodesic_refined(&g, &s0, 3.0, 50, 1e-8, 12).unwrap();
    assert!(change < 1e-8);
}

#[test]
fn riemannian_recovery_from_frames() {
    for geo in [
        builtins::flat(Signature::euclidean(4)).unwrap(),
        builtins::polar().unwrap(),
        builtins::sphere2(2.0).unwrap(),
        builtins::schwarzschild(1.0).unwrap(),
    ] {
        let n = geo.metric.dim();
        let p = match n {
            2 => pt(&[1.1, 0.4]),
            _ => pt(&[0.0, 8.0, 1.0, 0.5]),
        };
        let gamma = geometry::metric_from_vielbein(&geo.vielbein).unwrap();
        let a = gamma.at(&p).unwrap().g;
        let b = geo.metric.at(&p).unwrap().g;
        assert!((a - b).amax() < 1e-12, "{}", geo.name);
        let rh = gamma.riemann(&p).unwrap();
        let rg = geo.metric.riemann(&p).unwrap();
        let cartan = geometry::riemann_from_frame(&geo.vielbein, &p).unwrap();
        for ((x, y), z) in rh.riemann.iter().zip(&rg.riemann).zip(&cartan) {
            assert!((x - y).abs() < 1e-8, "{}", geo.name);
            assert!((x - z).abs() < 1e-6, "{}: {x} vs {z}", geo.name);
        }
    }
}
