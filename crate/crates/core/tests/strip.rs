use std::f64::consts::PI;

use proptest::prelude::*;
use striphyp::spaces::{strip_norm, SpaceParams};
use striphyp::stripharmonic::{kernel_quad_config, poisson_kernel, poisson_transform_weight, PathOrder};
use striphyp::{build_minorant, Complex64, GridConfig, MinorantMode, TestFunction, Weight};

#[test]
fn poisson_kernel_is_harmonic() {
    let h = 1.0;
    let d = 1e-4;
    for i in -10..=10 {
        for j in 3..=17 {
            let (x, y) = (0.3 * i as f64, 0.1 * j as f64);
            let p = |a: f64, b: f64| poisson_kernel(a, b, h).unwrap();
            let stencil = |d: f64| (p(x + d, y) + p(x - d, y) + p(x, y + d) + p(x, y - d) - 4.0 * p(x, y)) / (d * d);
            let lap = (4.0 * stencil(d) - stencil(2.0 * d)) / 3.0;
            assert!(lap.abs() < 1e-5, "laplacian {lap} at ({x}, {y})");
        }
    }
}

#[test]
fn poisson_kernel_exponential_envelope() {
    let c = (1f64).cosh() - 1.0;
    for i in 0..200 {
        let x = 1.0 + 0.1 * i as f64;
        for j in 1..40 {
            let y = 2.0 * PI * j as f64 / 40.0;
            let p = poisson_kernel(x, y, PI).unwrap();
            assert!(p.abs() <= y.sin().abs() * (1.0 - x).exp() / c * (1.0 + 1e-12));
            assert_eq!(p, poisson_kernel(-x, y, PI).unwrap());
        }
    }
}

#[test]
fn conjugate_agrees_with_path_integration() {
    let f = build_minorant(&Weight::power(0.5).unwrap(), 1.0, 1.0, MinorantMode::Dilate).unwrap();
    for z in [Complex64::new(2.5, 0.6), Complex64::new(-1.2, -0.3), Complex64::new(0.0, 0.9)] {
        let a = f.conjugate(z).unwrap();
        let b = f.conjugate_along(z, PathOrder::VerticalFirst).unwrap();
        assert!((a - b).abs() < 1e-7, "{z}: {a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn poisson_lower_bound(x in -20.0f64..20.0, frac in 0.01f64..0.99, sub in proptest::bool::ANY) {
        let (w, h) = if sub { (Weight::linear(), PI) } else { (Weight::power(0.5).unwrap(), 1.0) };
        let y = frac * h;
        let p = poisson_transform_weight(&w, x, y, h, &kernel_quad_config()).unwrap();
        prop_assert!(p >= 0.5 * w.eval(x) * (1.0 - y / h) - 1e-10);
    }

    #[test]
    fn minorant_modulus_inside_sandwich(x in -15.0f64..15.0, y in -0.95f64..0.95) {
        let f = build_minorant(&Weight::twosqrt(), 1.0, 1.0, MinorantMode::Dilate).unwrap();
        let z = Complex64::new(x, y);
        let u = f.u(x, y).unwrap();
        prop_assert!(f.lower_log_bound(x) <= u && u <= f.upper_log_bound(x));
        prop_assert!((f.eval(z).unwrap().norm().ln() - u).abs() < 1e-8 * u.abs().max(1.0));
        prop_assert!((f.eval(z).unwrap() * f.eval_reciprocal(z).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn strip_norm_is_homogeneous(a in 0.3f64..3.0, re in -4.0f64..4.0, im in -4.0f64..4.0) {
        let phi = TestFunction::gaussian(a, Complex64::new(0.0, 0.0)).unwrap();
        let p = SpaceParams::new(Weight::twosqrt(), 0.5, 1.0);
        let c = Complex64::new(re, im);
        prop_assume!(c.norm() > 1e-3);
        let n1 = strip_norm(&phi, &p, &GridConfig::default()).unwrap().value;
        let n2 = strip_norm(&phi.scaled(c), &p, &GridConfig::default()).unwrap().value;
        prop_assert!((n2 - c.norm() * n1).abs() <= 1e-10 * n2);
    }

    #[test]
    fn strip_norm_monotone_in_parameters(a in 0.5f64..2.0, h in 0.1f64..1.0, lambda in 0.5f64..2.0) {
        let phi = TestFunction::gaussian(a, Complex64::new(0.3, 0.0)).unwrap();
        let w = Weight::power(0.5).unwrap();
        let g = GridConfig::default();
        let base = strip_norm(&phi, &SpaceParams::new(w.clone(), h, lambda), &g).unwrap().value;
        let wider = strip_norm(&phi, &SpaceParams::new(w.clone(), 1.5 * h, lambda), &g).unwrap().value;
        let dilated = strip_norm(&phi, &SpaceParams::new(w, h, 1.5 * lambda), &g).unwrap().value;
        prop_assert!(wider >= base * (1.0 - 1e-12));
        prop_assert!(dilated >= base * (1.0 - 1e-12));
    }
}
