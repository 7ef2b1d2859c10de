use proptest::prelude::*;

use super::functions::*;
use super::*;
use crate::rng::run_rng;

fn eval(id: FunctionId, x: &[f64]) -> f64 {
    id.formula(x, &mut run_rng(0))
}

#[test]
fn table_metadata() {
    let f1 = FunctionId::F1.problem();
    assert_eq!(
        (f1.dim(), f1.lower(), f1.upper(), f1.known_min()),
        (10, -100.0, 100.0, Some(0.0))
    );
    let f16 = FunctionId::F16.problem();
    assert_eq!(
        (f16.dim(), f16.lower(), f16.upper(), f16.known_min()),
        (2, -5.0, 5.0, Some(-1.0316))
    );
    let f13 = FunctionId::F13.problem();
    assert_eq!((f13.dim(), f13.lower(), f13.upper()), (30, -50.0, 50.0));
    assert_eq!(FunctionId::F8.spec().dim, 30);
}

#[test]
fn family_partition() {
    for id in FunctionId::ALL {
        let expected = match id.number() {
            1..=7 => Family::Unimodal,
            8..=13 => Family::Multimodal,
            _ => Family::FixedDimension,
        };
        assert_eq!(id.spec().family, expected, "{id}");
        assert_eq!(id.spec().stochastic, id == FunctionId::F7);
        assert_eq!(id.problem().is_stochastic(), id == FunctionId::F7);
    }
}

#[test]
fn ids_round_trip_and_reject_unknown() {
    for id in FunctionId::ALL {
        assert_eq!(id.to_string().parse::<FunctionId>().unwrap(), id);
    }
    assert_eq!("f12".parse::<FunctionId>().unwrap(), FunctionId::F12);
    for bad in ["F0", "F20", "G1", "", "F", "F1x"] {
        assert!(
            matches!(bad.parse::<FunctionId>(), Err(Error::UnknownFunction(_))),
            "{bad}"
        );
    }
}

#[test]
fn wrong_length_is_rejected() {
    let err = FunctionId::F1.evaluate_at(&[0.0; 3], &mut run_rng(0)).unwrap_err();
    assert_eq!(
        err,
        Error::DimensionMismatch {
            id: "F1".into(),
            expected: 10,
            actual: 3
        }
    );
}

#[test]
fn zeros_at_known_minimizers() {
    assert_eq!(eval(FunctionId::F1, &[0.0; 10]), 0.0);
    assert_eq!(eval(FunctionId::F5, &[1.0; 10]), 0.0);
    assert_eq!(eval(FunctionId::F9, &[0.0; 10]), 0.0);
    assert!(eval(FunctionId::F10, &[0.0; 10]).abs() < 1e-12);
    assert_eq!(eval(FunctionId::F11, &[0.0; 10]), 0.0);
}

#[test]
fn step_rounds_half_up() {
    // floor(0.4 + 0.5) = 0, floor(-0.4 + 0.5) = 0
    assert_eq!(eval(FunctionId::F6, &[0.4, -0.4]), 0.0);
    // floor(0.6 + 0.5) = 1, floor(-1.6 + 0.5) = -2
    assert_eq!(eval(FunctionId::F6, &[0.6, -1.6]), 5.0);
}

#[test]
fn camel_at_tabulated_point() {
    let v = eval(FunctionId::F16, &[0.08984, -0.7126]);
    assert!((v - -1.0316).abs() < 1e-3, "{v}");
}

/// Grid refinement over [-5, 5]^2, independent of any optimizer in the crate.
fn grid_refine(f: impl Fn(f64, f64) -> f64, lo: f64, hi: f64) -> (f64, f64, f64) {
    let n = 400;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let step = (hi - lo) / n as f64;
    for i in 0..=n {
        for j in 0..=n {
            let (a, b) = (lo + i as f64 * step, lo + j as f64 * step);
            let v = f(a, b);
            if v < best.0 {
                best = (v, a, b);
            }
        }
    }
    let mut half = step;
    for _ in 0..40 {
        let (_, ca, cb) = best;
        let s = half / 10.0;
        for i in -10..=10 {
            for j in -10..=10 {
                let (a, b) = (ca + i as f64 * s, cb + j as f64 * s);
                let v = f(a, b);
                if v < best.0 {
                    best = (v, a, b);
                }
            }
        }
        half = s * 2.0;
    }
    best
}

#[test]
fn camel_minimum_matches_grid_oracle() {
    let (v, a, b) = grid_refine(|a, b| six_hump_camel(&[a, b]), -5.0, 5.0);
    let spec = FunctionId::F16.spec();
    assert!((v - spec.exact_min).abs() < 1e-9, "grid {v}");
    // the camel has two symmetric global minima
    let m = FunctionId::F16.minimizer();
    let near = |s: f64| (a - s * m[0]).abs() < 1e-4 && (b - s * m[1]).abs() < 1e-4;
    assert!(near(1.0) || near(-1.0), "({a}, {b})");
    assert!((v - spec.f_min).abs() < 1e-3);
}

#[test]
fn exact_minima_at_canonical_minimizers() {
    for id in FunctionId::ALL {
        let s = id.spec();
        let x = id.minimizer();
        assert_eq!(x.len(), s.dim, "{id}");
        let v = if id == FunctionId::F7 {
            quartic(&x)
        } else {
            eval(id, &x)
        };
        let tol = 1e-6 * s.exact_min.abs().max(1.0);
        assert!((v - s.exact_min).abs() < tol, "{id}: {v} vs {}", s.exact_min);
    }
}

#[test]
fn tabulated_minima_within_quoted_precision() {
    use FunctionId::*;
    // (id, half a unit in the last quoted digit)
    for (id, tol) in [
        (F15, 5e-5),
        (F16, 5e-5),
        (F17, 5e-4),
        (F18, 1e-12),
        (F19, 5e-3),
        (F14, 5e-3),
    ] {
        let v = eval(id, &id.minimizer());
        assert!((v - id.spec().f_min).abs() <= tol, "{id}: {v}");
    }
}

#[test]
fn constant_tables_certified() {
    use FunctionId::*;
    assert!((eval(F14, &F14.minimizer()) - 0.998_003_837_794_449_3).abs() < 1e-9);
    assert!((eval(F15, &F15.minimizer()) - 0.0003).abs() < 1e-3);
    assert!((eval(F19, &F19.minimizer()) - -3.862_782).abs() < 1e-6);
    assert_eq!(foxhole(0), [-32.0, -32.0]);
    assert_eq!(foxhole(6), [-16.0, -16.0]);
    assert_eq!(foxhole(24), [32.0, 32.0]);
}

#[test]
fn branin_has_three_equal_minima() {
    let pi = std::f64::consts::PI;
    for x in [[-pi, 12.275], [pi, 2.275], [3.0 * pi, 2.475]] {
        assert!((branin(&x) - 0.397_887_357_729_738).abs() < 1e-9);
    }
}

#[test]
fn registry_lookup_and_external_problems() {
    let mut reg = Registry::classical();
    assert_eq!(reg.iter().count(), 19);
    assert_eq!(reg.get("f7").unwrap().id(), "F7");
    assert!(reg.get("CEC01").is_err());
    let ext = Problem::from_fn("CEC01", 3, -1.0, 1.0, sphere).unwrap();
    reg.register(ext);
    assert_eq!(reg.get("CEC01").unwrap().dim(), 3);
    assert_eq!(reg.iter().count(), 20);
}

fn probe(lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(lo..hi, 1..12)
}

proptest! {
    #[test]
    fn nonnegative_where_forced(x in probe(-100.0, 100.0)) {
        use FunctionId::*;
        for id in [F1, F2, F3, F4, F5, F6, F9, F11] {
            prop_assert!(eval(id, &x) >= 0.0, "{id}");
        }
    }

    #[test]
    fn quartic_noise_is_bounded(x in probe(-1.28, 1.28), seed in any::<u64>()) {
        let det = quartic(&x);
        let v = FunctionId::F7.formula(&x, &mut run_rng(seed));
        prop_assert!(v >= det && v <= det + 1.0);
    }

    #[test]
    fn sign_flip_symmetry(x in probe(-30.0, 30.0)) {
        use FunctionId::*;
        let flipped: Vec<f64> = x.iter().map(|v| -v).collect();
        for id in [F1, F9, F10, F11] {
            prop_assert_eq!(eval(id, &x), eval(id, &flipped), "{}", id);
        }
    }

    #[test]
    fn penalty_vanishes_exactly_inside(v in -60.0f64..60.0, a in 1.0f64..20.0) {
        let u = penalty(v, a, 100.0, 4);
        if v.abs() <= a {
            prop_assert_eq!(u, 0.0);
        } else {
            prop_assert!(u > 0.0);
        }
    }
}
