use cutoff_coulomb_core::envelope::{
    envelope_energy, envelope_minimum, kinetic_potential, linear_eigenvalue_from_p, p_number_from_linear,
    parametric_curve, parametric_point, semiclassical_energy, tangent_line, transformation, transformation_curvature,
    Basis,
};
use proptest::prelude::*;

/// Grid scan over log r followed by golden-section refinement.
fn brute_force_min<F: Fn(f64) -> f64>(f: F, log_lo: f64, log_hi: f64) -> f64 {
    let points = 20_000;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=points {
        let x = log_lo + (log_hi - log_lo) * f64::from(i) / f64::from(points);
        let value = f(x.exp());
        if value < best.0 {
            best = (value, x);
        }
    }
    let step = (log_hi - log_lo) / f64::from(points);
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c.exp()) < f(d.exp()) {
            b = d;
        } else {
            a = c;
        }
    }
    f((0.5 * (a + b)).exp())
}

#[test]
fn envelope_energy_matches_brute_force() {
    // high-precision root of r³ - 2r² - 4r - 2 = 0
    let reference = -0.140_781_012_588_552_22;
    let scanned = brute_force_min(|r| 1.0 / (r * r) - 1.0 / (r + 1.0), -3.0, 4.0);
    assert!((scanned - reference).abs() < 1e-12, "{scanned}");
    let computed = envelope_energy(1.0, 1.0, 1.0).unwrap();
    assert!((computed - reference).abs() < 1e-14, "{computed}");
    assert!(computed > -0.25 && computed < 0.0);

    for &(p, v, b) in &[
        (2.37192, 1.0, 2.0),
        (9.0, 4.0, 10.0),
        (1.18804, 0.5, 0.1),
        (3.0, 20.0, 0.01),
    ] {
        let scanned = brute_force_min(|r| p * p / (r * r) - v / (r + b), -5.0, 6.0);
        let computed = envelope_energy(p, v, b).unwrap();
        assert!(((computed - scanned) / scanned).abs() < 1e-10, "P={p} v={v} b={b}");
    }
}

#[test]
fn kinetic_potential_round_trip() {
    for &(basis, eig) in &[
        (Basis::Coulomb, -0.25),
        (Basis::Coulomb, -1.0 / 36.0),
        (Basis::Linear, 2.338_107_410_459_767),
        (Basis::Linear, 10.165_663),
    ] {
        let scanned = brute_force_min(|s| s + kinetic_potential(basis, eig, s).unwrap(), -12.0, 8.0);
        assert!(((scanned - eig) / eig).abs() < 1e-8, "{basis:?} {eig}: {scanned}");
        let closed = semiclassical_energy(basis, eig, 1.0).unwrap();
        assert!(((closed - eig) / eig).abs() < 1e-13);
    }
}

#[test]
fn p_number_round_trip_through_minimization() {
    for eig in [2.338_107_410_459_767, 4.087_949_444_130_97, 3.361_254_5, 10.165_663] {
        let p = p_number_from_linear(eig).unwrap();
        let scanned = brute_force_min(|r| p * p / (r * r) + r, -3.0, 4.0);
        assert!(((scanned - eig) / eig).abs() < 1e-8);
        assert!(((linear_eigenvalue_from_p(p) - eig) / eig).abs() < 1e-14);
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

#[test]
fn transformation_convexity_signs() {
    for &(v, b) in &[(1.0, 1.0), (0.5, 0.1), (4.0, 10.0)] {
        // second divided differences of g on a log-spaced radius grid
        for (basis, expect_convex) in [(Basis::Coulomb, true), (Basis::Linear, false)] {
            let mut hs: Vec<f64> = log_grid(1e-2, 1e2, 200).into_iter().map(|r| basis.h(r)).collect();
            hs.sort_by(f64::total_cmp);
            for w in hs.windows(3) {
                let g: Vec<f64> = w.iter().map(|&h| transformation(basis, v, b, h).unwrap()).collect();
                let d1 = (g[1] - g[0]) / (w[1] - w[0]);
                let d2 = (g[2] - g[1]) / (w[2] - w[1]);
                let second = (d2 - d1) / (w[2] - w[0]);
                if expect_convex {
                    assert!(second >= 0.0, "{basis:?} v={v} b={b} h={}", w[1]);
                } else {
                    assert!(second <= 0.0, "{basis:?} v={v} b={b} h={}", w[1]);
                }
            }
            let r = 1.7;
            let curvature = transformation_curvature(basis, v, b, r);
            assert_eq!(curvature > 0.0, expect_convex);
        }
    }
}

#[test]
fn tangent_sandwich_on_dense_grid() {
    let grid = log_grid(1e-3, 1e3, 400);
    for &(v, b) in &[(1.0, 1.0), (0.5, 0.1), (4.0, 10.0), (1.0, 0.0)] {
        for t in [0.05, 0.5, 1.0, 3.0, 25.0] {
            let below = tangent_line(t, Basis::Coulomb, v, b).unwrap();
            let above = tangent_line(t, Basis::Linear, v, b).unwrap();
            for &r in &grid {
                let f = -v / (r + b);
                let slack = 1e-14 * f.abs().max(below.eval(r).abs());
                assert!(below.eval(r) <= f + slack, "below t={t} r={r}");
                assert!(
                    above.eval(r) >= f - 1e-14 * f.abs().max(above.eval(r).abs()),
                    "above t={t} r={r}"
                );
            }
            let f_t = -v / (t + b);
            assert!((below.eval(t) - f_t).abs() <= 1e-14 * f_t.abs());
            assert!((above.eval(t) - f_t).abs() <= 1e-14 * f_t.abs());
        }
    }
}

#[test]
fn parametric_points_are_envelope_minima() {
    for &(p, b) in &[(1.0, 1.0), (1.18804, 1.0), (2.37192, 2.0), (12.47532, 0.3)] {
        let curve = parametric_curve(p, b, &log_grid(0.05, 500.0, 60)).unwrap();
        for point in curve {
            let e = envelope_energy(p, point.v, b).unwrap();
            assert!(
                ((e - point.energy) / point.energy).abs() < 1e-8,
                "P={p} b={b} r={}",
                point.r
            );
            let m = envelope_minimum(p, point.v, b).unwrap();
            assert!(((m.radius - point.r) / point.r).abs() < 1e-8);
        }
    }
}

#[test]
fn coulomb_curves_share_one_shape() {
    // b = 0: E/v² is a constant -1/(4P²), so E/v² × P² is identical for every P
    for p in [1.0, 1.18804, 2.5, 9.0] {
        for r in [0.1, 1.0, 10.0] {
            let pt = parametric_point(p, 0.0, r).unwrap();
            assert!((pt.energy / (pt.v * pt.v) * p * p + 0.25).abs() < 1e-14);
        }
    }
}

proptest! {
    #[test]
    fn envelope_monotonicity(
        p in 0.5f64..15.0,
        dp in 1e-3f64..2.0,
        v in 0.05f64..20.0,
        dv in 1e-3f64..5.0,
        b in 0.0f64..20.0,
        db in 1e-3f64..5.0,
    ) {
        let e = envelope_energy(p, v, b).unwrap();
        prop_assert!(e < 0.0);
        prop_assert!(envelope_energy(p + dp, v, b).unwrap() > e);
        prop_assert!(envelope_energy(p, v, b + db).unwrap() > e);
        prop_assert!(envelope_energy(p, v + dv, b).unwrap() < e);
    }

    #[test]
    fn envelope_never_below_coulomb(p in 0.5f64..15.0, v in 0.05f64..20.0, b in 1e-3f64..20.0) {
        prop_assert!(envelope_energy(p, v, b).unwrap() > -v * v / (4.0 * p * p));
    }

    #[test]
    fn curve_coupling_decreases_with_radius(p in 0.5f64..15.0, b in 1e-3f64..10.0, r in 0.01f64..100.0) {
        let a = parametric_point(p, b, r).unwrap();
        let c = parametric_point(p, b, r * 1.01).unwrap();
        prop_assert!(c.v < a.v);
        prop_assert!(a.v > 0.0);
    }
}
