use std::f64::consts::{FRAC_PI_2, PI, TAU};

use cauchy_core::calculus::{continuity_probe, continuity_probe_with, delta_kernel_integral, limit_at, DeltaKernelParams, Side};
use cauchy_core::crofton::{bound_sweep, convergence_slope, length_theorem1, length_theorem2, projection_sum};
use cauchy_core::curvature::{center_normals, osculating, radius_chord, radius_contingence};
use cauchy_core::curve::{ParametricCurve, Polyline};
use cauchy_core::{parse, Exponent, LcNumber, TruncationContext};
use proptest::prelude::*;

fn polyline() -> impl Strategy<Value = Polyline> {
    proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 2..40).prop_filter_map("coincident vertices", |v| Polyline::new(v).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_has_period_pi(poly in polyline(), p in -10.0..10.0f64) {
        let (a, b) = (projection_sum(&poly, p), projection_sum(&poly, p + PI));
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn rigid_motion_invariance(poly in polyline(), angle in -PI..PI, dx in -5.0..5.0f64, dy in -5.0..5.0f64, phi in 0.0..PI) {
        let moved = poly.rigid_motion(angle, (dx, dy)).unwrap();
        let (a, b) = (length_theorem1(&poly), length_theorem1(&moved));
        prop_assert!((a - b).abs() <= 1e-10 * a);
        let r = length_theorem2(&moved, 7, phi).unwrap();
        let s = length_theorem2(&poly, 7, phi - angle).unwrap();
        prop_assert!((r.m - s.m).abs() <= 1e-12 * (1.0 + s.m));
    }

    #[test]
    fn circles_are_exact(r in 0.1..100.0f64, cx in -50.0..50.0f64, cy in -50.0..50.0f64, t in -PI..PI) {
        let c = ParametricCurve::parse(&format!("{cx} + {r}*cos(t)"), &format!("{cy} + {r}*sin(t)"), -4.0, 4.0).unwrap();
        let ctx = TruncationContext::default();
        for rho in [radius_contingence(&c, t, &ctx).unwrap(), radius_chord(&c, t, &ctx).unwrap()] {
            prop_assert!((rho - r).abs() <= 1e-9 * r);
        }
        let (x, y) = center_normals(&c, t, &ctx).unwrap();
        prop_assert!((x - cx).hypot(y - cy) <= 1e-9 * r);
        let p = osculating(&c, t, &ctx).unwrap();
        prop_assert!((p.cx - cx).hypot(p.cy - cy) <= 1e-9 * r);
    }
}

#[test]
fn segment_slope_matches_direct_evaluation() {
    // Independent evaluation of the same sweep: slope −2.001048.
    let seg = Polyline::new(vec![(0.0, 0.0), (1.0, 0.0)]).unwrap();
    let ns: Vec<usize> = (4..=128).collect();
    let slope = convergence_slope(&bound_sweep(&seg, &ns, 360).unwrap());
    assert!((slope + 2.001048).abs() < 1e-5, "{slope}");
}

#[test]
fn two_sided_limits_agree_where_continuous() {
    let ctx = TruncationContext::default();
    let corpus = [("sin(t)/t", 0.0), ("(1 - cos(t))/t^2", 0.0), ("exp(t)", 1.0), ("abs(t)", 0.0), ("t^(1/3)", 2.0)];
    for (src, x0) in corpus {
        let f = parse(src, &["t"]).unwrap();
        let a = limit_at(&f, x0, Side::Above, &ctx).unwrap();
        let b = limit_at(&f, x0, Side::Below, &ctx).unwrap();
        assert!((a - b).abs() < 1e-12, "{src}: {a} vs {b}");
    }
    let step = parse("abs(t)/t", &["t"]).unwrap();
    assert_eq!(limit_at(&step, 0.0, Side::Above, &ctx).unwrap(), 1.0);
    assert_eq!(limit_at(&step, 0.0, Side::Below, &ctx).unwrap(), -1.0);
}

#[test]
fn continuity_does_not_depend_on_the_infinitesimal() {
    let ctx = TruncationContext::default();
    let eps3 = LcNumber::monomial(1.0, Exponent::integer(3));
    let two_eps = LcNumber::epsilon().scale(2.0);
    for src in ["1/t", "sin(t)", "sqrt(t)", "abs(t)/t", "t^(1/3)"] {
        let f = parse(src, &["t"]).unwrap();
        for x0 in [0.5, 1.0, 3.0] {
            let base = continuity_probe(&f, x0, &ctx).unwrap().continuous;
            for inc in [&eps3, &two_eps] {
                assert_eq!(continuity_probe_with(&f, x0, inc, &ctx).unwrap().continuous, base, "{src} at {x0}");
            }
        }
    }
}

#[test]
fn delta_kernel_approaches_target_monotonically() {
    for (src, a) in [("cos(m)", 0.0), ("1 + m^2", 0.5), ("exp(m)", -1.0)] {
        let f = parse(src, &["m"]).unwrap();
        let target = FRAC_PI_2 * f.eval_real(&[("m", a)]).unwrap();
        let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
            .iter()
            .map(|&alpha| (delta_kernel_integral(&f, &DeltaKernelParams::new(a, alpha, 1e-2)).unwrap() - target).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{src}: {gaps:?}");
    }
}

#[test]
fn discretized_curve_length_converges() {
    let c = ParametricCurve::parse("cos(t)", "sin(t)", 0.0, TAU).unwrap();
    let poly = cauchy_core::crofton::discretize(&c, 4096).unwrap();
    assert!((length_theorem1(&poly) - TAU).abs() < 1e-6);
}
