use nigar::special_fn::{bessel_k, bessel_k_scaled, log_bessel_k, BesselArg, BesselError};
use nigar_oracle as oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn matches_quadrature_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let nu = rng.random_range(0..=2);
        let x = rng.random_range(0.1..50.0);
        let want = oracle::bessel_k(nu as f64, x);
        let got = bessel_k(nu, x).unwrap();
        worst = worst.max(rel(got, want));
    }
    assert!(worst < 1e-8, "worst relative error {worst:e}");
}

#[test]
fn matches_quadrature_across_range() {
    for &x in &[1e-8, 1e-4, 0.01, 0.5, 1.999, 2.0, 2.001, 10.0, 100.0, 300.0, 690.0] {
        for nu in 0..=2 {
            let want = oracle::bessel_k(nu as f64, x);
            let got = bessel_k(nu, x).unwrap();
            assert!(rel(got, want) < 1e-10, "K_{nu}({x}): {got} vs {want}");
            let scaled = bessel_k_scaled(nu, x).unwrap();
            assert!(rel(scaled * (-x).exp(), want) < 1e-10);
        }
    }
}

#[test]
fn known_values() {
    // mpmath.besselk
    assert!(rel(bessel_k(0, 1.0).unwrap(), 0.42102443824070833) < 1e-14);
    assert!(rel(bessel_k(2, 1.0).unwrap(), 1.6248388986351774) < 1e-14);
    assert!((log_bessel_k(1, 1.0).unwrap() - 0.6019072301972346f64.ln()).abs() < 1e-14);
    assert_eq!(bessel_k(-1, 2.5), bessel_k(1, 2.5));
    assert_eq!(log_bessel_k(-1, 5.0), log_bessel_k(1, 5.0));
}

#[test]
fn log_at_large_argument_follows_asymptote() {
    let x = 700.0;
    let asym = (std::f64::consts::PI / (2.0 * x)).sqrt().ln() - x;
    let got = log_bessel_k(0, x).unwrap();
    assert!(got.is_finite());
    // next term of the expansion is −1/(8x)
    assert!((got - asym - (-1.0 / (8.0 * x))).abs() < 1e-6);
    for &x in &[1e5, 1e6, 1e7] {
        let asym = (std::f64::consts::PI / 2.0).sqrt().ln() - x - 0.5 * x.ln();
        assert!(rel(log_bessel_k(1, x).unwrap(), asym) < 1e-8);
    }
    // with the (4ν² − 1)/(8x) correction the agreement holds much earlier
    let x = 1e3;
    let asym = (std::f64::consts::PI / 2.0).sqrt().ln() - x - 0.5 * x.ln() + 3.0 / (8.0 * x);
    assert!(rel(log_bessel_k(1, x).unwrap(), asym) < 1e-8);
}

#[test]
fn domain_and_overflow() {
    assert!(matches!(bessel_k(0, 0.0), Err(BesselError::Domain(_))));
    assert!(matches!(bessel_k(1, -1.0), Err(BesselError::Domain(_))));
    assert!(matches!(BesselArg::new(0, f64::NAN), Err(BesselError::Domain(_))));
    assert!(matches!(bessel_k(2, 1e-200), Err(BesselError::Overflow { .. })));
    // the log stays finite where the value overflows
    assert!(log_bessel_k(2, 1e-200).unwrap().is_finite());
}

#[test]
fn asymptote_tightens_beyond_fifty() {
    let mut prev = f64::INFINITY;
    for &x in &[50.0, 75.0, 100.0, 200.0, 400.0] {
        let lead = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        for nu in 0..=2 {
            assert!((bessel_k(nu, x).unwrap() / lead - 1.0).abs() <= 0.05);
        }
        let dev = (bessel_k(2, x).unwrap() / lead - 1.0).abs();
        assert!(dev < prev);
        prev = dev;
    }
}

#[test]
fn recurrence_on_log_grid() {
    for i in 0..=80 {
        let x = 10f64.powf(-2.0 + 4.0 * i as f64 / 80.0);
        let k0 = bessel_k(0, x).unwrap();
        let k1 = bessel_k(1, x).unwrap();
        let k2 = bessel_k(2, x).unwrap();
        assert!(((k2 - k0 - 2.0 / x * k1) / k2).abs() <= 1e-9, "x = {x}");
    }
}

proptest! {
    #[test]
    fn order_symmetry_is_exact(x in 1e-6f64..500.0, nu in 0i32..=2) {
        prop_assert_eq!(bessel_k(-nu, x).unwrap().to_bits(), bessel_k(nu, x).unwrap().to_bits());
    }

    #[test]
    fn positive_and_decreasing(x in 1e-3f64..600.0, nu in 0i32..=3) {
        let a = bessel_k(nu, x).unwrap();
        let b = bessel_k(nu, x * 1.01).unwrap();
        prop_assert!(a > 0.0 && b < a);
        prop_assert!(bessel_k(nu + 1, x).unwrap() > a);
    }

    #[test]
    fn log_agrees_with_value(x in 1e-3f64..600.0, nu in 0i32..=2) {
        let v = bessel_k(nu, x).unwrap();
        prop_assert!((log_bessel_k(nu, x).unwrap() - v.ln()).abs() <= 1e-12 * v.ln().abs().max(1.0));
    }
}
