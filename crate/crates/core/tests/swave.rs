#![allow(clippy::excessive_precision)]

use cutoff_coulomb_core::exact_swave::{
    eigencondition, swave_exact, tricomi_u, u_integral, u_recurrence, UArguments, DEFAULT_TOLERANCE,
};
use cutoff_coulomb_core::oracle::{solve_cutoff_coulomb, SolverConfig};
use cutoff_coulomb_core::QuantumNumbers;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn tricomi_reference_values() {
    // 30-digit reference values
    let cases = [
        (0.5, 1.0, 1.200_346_934_790_947_7),
        (-0.5, 2.0, 0.853_749_102_621_816_61),
        (-3.7, 0.3, 17.101_493_918_440_862),
        (-20.3, 5.0, -3.319_911_776_261_035_2e18),
        (1.5, 0.001, 1_124.586_403_129_981_7),
        (0.2, 500.0, 0.288_632_291_854_415_02),
        (-45.5, 900.0, 2.190_869_381_732_722e133),
    ];
    for (x, z, expected) in cases {
        let u = tricomi_u(UArguments::new(x, z)).unwrap();
        assert!(rel(u, expected) < 1e-11, "U({x},2,{z}) = {u}, want {expected}");
    }
}

#[test]
fn tricomi_polynomial_cases() {
    for z in [0.1, 1.0, 2.0, 7.5, 40.0] {
        assert_eq!(tricomi_u(UArguments::new(0.0, z)).unwrap(), 1.0);
        assert!(rel(tricomi_u(UArguments::new(1.0, z)).unwrap(), 1.0 / z) < 1e-15);
        assert!((tricomi_u(UArguments::new(-1.0, z)).unwrap() - (z - 2.0)).abs() < 1e-13 * z.max(1.0));
    }
    assert_eq!(tricomi_u(UArguments::new(-1.0, 2.0)).unwrap(), 0.0);
}

#[test]
fn integral_and_recurrence_agree_on_overlap() {
    for i in 1..40 {
        let x = 0.05 * f64::from(i);
        for z in [0.01, 0.3, 1.0, 4.0, 25.0] {
            let a = u_integral(x.max(1.0), z).unwrap();
            let b = u_recurrence(x.max(1.0), z).unwrap();
            assert!(rel(a, b) < 1e-8, "x={x} z={z}");
            if x < 1.0 {
                let c = u_recurrence(x, z).unwrap();
                let d = u_integral(x, z).unwrap();
                assert!(rel(c, d) < 1e-8, "x={x} z={z}: {c} vs {d}");
            }
        }
    }
}

#[test]
fn tricomi_rejects_bad_arguments() {
    assert!(tricomi_u(UArguments { x: 0.5, y: 3.0, z: 1.0 }).is_err());
    assert!(tricomi_u(UArguments::new(0.5, 0.0)).is_err());
    assert!(tricomi_u(UArguments::new(0.5, -1.0)).is_err());
}

const FROZEN: [(f64, [f64; 3]); 3] = [
    (
        0.1,
        [
            -0.215_367_917_245_689_01,
            -0.057_911_462_620_654_759_5,
            -0.026_391_369_072_613_383_2,
        ],
    ),
    (
        1.0,
        [
            -0.122_265_719_827_531_724,
            -0.042_077_445_834_904_033_1,
            -0.021_132_090_903_031_654,
        ],
    ),
    (
        10.0,
        [
            -0.035_335_140_110_043_585_8,
            -0.018_059_622_781_855_191_1,
            -0.011_106_157_864_810_753_9,
        ],
    ),
];

#[test]
fn swave_matches_frozen_references() {
    for (b, levels) in FROZEN {
        for (i, expected) in levels.into_iter().enumerate() {
            let n = i as u32 + 1;
            let root = swave_exact(n, 1.0, b, DEFAULT_TOLERANCE).unwrap();
            assert!(rel(root.energy, expected) < 1e-10, "n={n} b={b}: {}", root.energy);
            let (lo, hi) = root.bracket_used;
            assert!(lo < root.energy && root.energy < hi);
            assert!(eigencondition(1.0, b, root.energy).unwrap().abs() == root.residual);
        }
    }
}

#[test]
fn swave_levels_are_ordered() {
    for b in [0.01, 0.1, 1.0, 3.0, 10.0] {
        let energies: Vec<f64> = (1..=4)
            .map(|n| swave_exact(n, 1.0, b, DEFAULT_TOLERANCE).unwrap().energy)
            .collect();
        for w in energies.windows(2) {
            assert!(w[0] < w[1], "b={b}: {energies:?}");
        }
    }
}

#[test]
fn swave_rises_with_cutoff() {
    for n in 1..=3 {
        let mut prev = -1.0 / (4.0 * f64::from(n * n));
        for b in [1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let e = swave_exact(n, 1.0, b, DEFAULT_TOLERANCE).unwrap().energy;
            assert!(e > prev, "n={n} b={b}");
            prev = e;
        }
    }
}

#[test]
fn swave_approaches_hydrogen_from_above() {
    let references = [
        (0.01, -0.245_307_598_884_974_645),
        (0.001, -0.249_504_378_031_882_368),
        (1e-4, -0.249_950_055_605_161_832),
    ];
    let mut gap = f64::INFINITY;
    for (b, expected) in references {
        let e = swave_exact(1, 1.0, b, DEFAULT_TOLERANCE).unwrap().energy;
        assert!(rel(e, expected) < 1e-10, "b={b}: {e}");
        let new_gap = e + 0.25;
        assert!(new_gap > 0.0 && new_gap < gap);
        gap = new_gap;
    }
}

#[test]
fn swave_agrees_with_shooting() {
    for v in [0.5, 1.0, 4.0] {
        for b in [0.1, 1.0, 10.0] {
            for n in 1..=2 {
                let exact = swave_exact(n, v, b, DEFAULT_TOLERANCE).unwrap().energy;
                let q = QuantumNumbers::new(n, 0).unwrap();
                let shot = solve_cutoff_coulomb(q, v, b, &SolverConfig::cutoff_coulomb(q, v, b)).unwrap();
                assert!(
                    rel(shot.energy, exact) < 1e-6,
                    "n={n} v={v} b={b}: {} vs {exact}",
                    shot.energy
                );
            }
        }
    }
}
