use helastica_core::hypgeo::*;
use helastica_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Euclidean circle (cx, m) of radius r sampled uniformly in the Euclidean angle.
fn euclid_circle(cx: f64, m: f64, r: f64, n: usize, turns: usize) -> SampledCurve {
    let xy: Vec<(f64, f64)> = (0..n * turns)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            (cx + r * t.cos(), m + r * t.sin())
        })
        .collect();
    SampledCurve::from_xy(&xy).unwrap()
}

fn lemniscate(n: usize) -> SampledCurve {
    let xy: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            (t.sin() * t.cos(), 2.0 + t.sin())
        })
        .collect();
    SampledCurve::from_xy(&xy).unwrap()
}

/// Length oracle for a Euclidean circle, by brute-force quadrature of ds = r dθ / (m + r sin θ).
fn circle_length_quadrature(m: f64, r: f64) -> f64 {
    let n = 200_000;
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| r / (m + r * (k as f64 * h).sin())).sum::<f64>() * h
}

#[test]
fn circle_length_oracle_is_consistent() {
    for (m, r) in [(1.0, std::f64::consts::FRAC_1_SQRT_2), (3.0, 1.0), (1.0, 0.2)] {
        let closed = 2.0 * PI * r / (m * m - r * r).sqrt();
        assert!((circle_length_quadrature(m, r) - closed).abs() < 1e-10);
    }
}

#[test]
fn clifford_circle_curvature_length_energy() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = euclid_circle(0.0, 1.0, r, 512, 1);
    let k = hyperbolic_curvature(&c).unwrap();
    let err = k.iter().map(|k| (k - 2f64.sqrt()).abs()).fold(0.0, f64::max);
    assert!(err < 1e-3, "{err}");
    assert!((length(&c).unwrap() - 2.0 * PI).abs() < 1e-3);
    assert!((energy(&c, 0.0).unwrap() - 4.0 * PI).abs() < 1e-2);
}

#[test]
fn horizontal_line_has_unit_curvature() {
    let pts: Vec<HPoint> = (0..40).map(|k| HPoint::new(0.1 * k as f64, 0.7).unwrap()).collect();
    for k in hyperbolic_curvature_open(&pts).unwrap() {
        assert!((k.abs() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn curvature_converges_at_least_second_order() {
    let (m, r) = (2.0, 1.5);
    let exact = m / r;
    let err = |n| {
        let k = hyperbolic_curvature(&euclid_circle(0.3, m, r, n, 1)).unwrap();
        k.iter().map(|k| (k - exact).abs()).fold(0.0, f64::max)
    };
    let (e1, e2) = (err(48), err(96));
    let order = (e1 / e2).log2();
    assert!(order >= 1.9, "order {order} ({e1:e}, {e2:e})");
}

#[test]
fn dilation_invariance() {
    let c = lemniscate(400);
    let scaled: Vec<(f64, f64)> = c.points().iter().map(|p| (3.7 * p.x, 3.7 * p.y)).collect();
    let s = SampledCurve::from_xy(&scaled).unwrap();
    assert!((length(&c).unwrap() - length(&s).unwrap()).abs() < 1e-10);
    assert!((energy(&c, 0.0).unwrap() - energy(&s, 0.0).unwrap()).abs() < 1e-10);
}

#[test]
fn energy_is_linear_in_lambda() {
    let c = euclid_circle(0.0, 2.0, 1.0, 256, 1);
    let l = length(&c).unwrap();
    let d = energy(&c, 0.37).unwrap() - energy(&c, 0.0).unwrap();
    assert!((d - 0.37 * l).abs() < 1e-12);
}

#[test]
fn normalize_identity_case() {
    let y = 1.7;
    let m = normalize_initial(HPoint::new(0.0, y).unwrap(), (y, 0.0), y).unwrap();
    assert!((m.a - 1.0).abs() < 1e-12 && m.b.abs() < 1e-12 && m.c.abs() < 1e-12 && (m.d - 1.0).abs() < 1e-12);
}

#[test]
fn normalize_postconditions() {
    let z = HPoint::new(3.0, 2.0).unwrap();
    let ang: f64 = 0.9;
    let v = (2.0 * ang.cos(), 2.0 * ang.sin());
    let m = normalize_initial(z, v, 1.0).unwrap();
    assert!((m.det() - 1.0).abs() < 1e-12);
    let w = m.apply(z.to_complex()).unwrap();
    assert!(w.re.abs() < 1e-10 && (w.im - 1.0).abs() < 1e-10);
    let dv = m.push_vector(z.to_complex(), Complex64::new(v.0, v.1));
    assert!((dv.re - 1.0).abs() < 1e-10 && dv.im.abs() < 1e-10);
}

#[test]
fn normalize_rejects_non_unit_tangent() {
    let z = HPoint::new(0.0, 2.0).unwrap();
    assert!(matches!(normalize_initial(z, (1.0, 0.0), 1.0), Err(Error::NotUnitTangent { .. })));
}

#[test]
fn isometry_preserves_curvature_magnitude() {
    let c = euclid_circle(0.0, 2.0, 1.0, 256, 1);
    let p = c.points()[10];
    let m = normalize_initial(p, (p.y, 0.0), 1.0).unwrap().compose(&MobiusMap::new(1.0, 0.5, 0.0, 1.0).unwrap());
    let img = apply_mobius(&m, &c).unwrap();
    // an arbitrary map distorts the index spacing, so compare against the exact value
    let exact = 2.0;
    for k in hyperbolic_curvature(&img).unwrap() {
        assert!((k.abs() - exact).abs() < 1e-6, "{k}");
    }
}

#[test]
fn mobius_identity_and_dilation() {
    let c = lemniscate(64);
    let id = apply_mobius(&MobiusMap::IDENTITY, &c).unwrap();
    assert_eq!(id.points(), c.points());
    let s: f64 = 2.5;
    let dil = apply_mobius(&MobiusMap::new(s.sqrt(), 0.0, 0.0, 1.0 / s.sqrt()).unwrap(), &c).unwrap();
    for (a, b) in dil.points().iter().zip(c.points()) {
        assert!((a.x - s * b.x).abs() < 1e-12 && (a.y - s * b.y).abs() < 1e-12);
    }
    assert!(matches!(MobiusMap::new(1.0, 1.0, 1.0, 1.0), Err(Error::BadMobius { .. })));
}

#[test]
fn turning_numbers() {
    assert_eq!(turning_number(&euclid_circle(0.0, 2.0, 1.0, 128, 1)).unwrap(), 1);
    assert_eq!(turning_number(&euclid_circle(0.0, 2.0, 1.0, 128, 2)).unwrap(), 2);
    assert_eq!(turning_number(&lemniscate(256)).unwrap(), 0);
    let rev: Vec<(f64, f64)> = euclid_circle(0.0, 2.0, 1.0, 128, 1).points().iter().rev().map(|p| (p.x, p.y)).collect();
    assert_eq!(turning_number(&SampledCurve::from_xy(&rev).unwrap()).unwrap(), -1);
}

#[test]
fn simplicity() {
    assert!(is_simple(&euclid_circle(0.0, 2.0, 1.0, 128, 1)));
    assert!(!is_simple(&lemniscate(256)));
}

#[test]
fn curve_invariants_enforced() {
    assert!(SampledCurve::from_xy(&[(0.0, 1.0); 4]).is_err());
    let mut xy: Vec<(f64, f64)> = (0..16).map(|k| (k as f64, 1.0 + (k as f64).sin().abs())).collect();
    xy[3].1 = -0.5;
    assert!(SampledCurve::from_xy(&xy).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_isometries_preserve_length_energy_turning(
        a in 0.3f64..3.0, b in -2.0f64..2.0, c in -1.0f64..1.0,
    ) {
        // ad − bc = 1 fixes d
        let d = (1.0 + b * c) / a;
        let m = MobiusMap::new(a, b, c, d).unwrap();
        // hyperbolic-arclength sampling is carried to hyperbolic-arclength sampling
        let curve = hyperbolic_circle(0.0, 3.0, 1.0, 256).unwrap();
        let img = apply_mobius(&m, &curve).unwrap();
        prop_assert!((length(&img).unwrap() - length(&curve).unwrap()).abs() < 1e-9);
        prop_assert!((energy(&img, 0.0).unwrap() - energy(&curve, 0.0).unwrap()).abs() < 1e-9);
        prop_assert_eq!(turning_number(&img).unwrap(), 1);
        let sum: f64 = turning_sum(&img);
        prop_assert!((sum - 1.0).abs() < 1e-9);
    }
}
