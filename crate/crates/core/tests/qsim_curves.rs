use laurent_lab::poly::from_f64;
use laurent_lab::poly::to_f64;
use laurent_lab::qsim::*;
use laurent_lab::symmetry::{fit_laurent_f64, fit_window, FitCoefficients};

const SHAPES: [(usize, usize); 5] = [(1, 0), (1, 1), (2, 0), (2, 1), (0, 1)];

#[test]
fn random_algorithms_fit_their_window() {
    for seed in 0..20u64 {
        let (r, t) = SHAPES[seed as usize % SHAPES.len()];
        let alg = AlgorithmSpec::random(8, r, t, 1, 100 + seed).unwrap();
        assert!(alg.max_unitarity_error() < UNITARITY_TOL);
        let curve = full_curve(&alg).unwrap();
        let fit = fit_laurent_f64(&curve, r, t).unwrap();
        assert_eq!(fit.exponent_window(), alg.exponent_window());
        assert!(
            fit.residual <= 1e-8,
            "seed {seed}: residual {}",
            fit.residual
        );
    }
}

#[test]
fn collision_curve_pins_exponent_minus_one() {
    let alg = AlgorithmSpec::collision(8).unwrap();
    let curve = full_curve(&alg).unwrap();
    let fit = fit_laurent_f64(&curve, 2, 0).unwrap();
    assert!(fit.residual <= 1e-8);
    let FitCoefficients::Exact(c) = &fit.coefficients else {
        panic!("exact fit expected")
    };
    assert!((to_f64(&c[1]) - 1.0).abs() < 1e-8);
    let exact: Vec<_> = curve.iter().map(|&(k, v)| (k, from_f64(v))).collect();
    for (lo, hi) in [(0, 6), (0, 3), (-6, -2), (-3, -2)] {
        let f = fit_window(&exact, lo, hi).unwrap();
        assert!(
            f.residual > 1e-4,
            "window [{lo}, {hi}] residual {}",
            f.residual
        );
    }
}

#[test]
fn projection_curve_is_linear() {
    let alg = AlgorithmSpec::projection(8).unwrap();
    let fit = fit_laurent_f64(&full_curve(&alg).unwrap(), 1, 0).unwrap();
    assert!(fit.residual <= 1e-12);
}

#[test]
fn projection_success_is_monotone_in_copies() {
    let mut prev = projection_distinguisher(64, 4, 0).unwrap().success;
    for m in 1..=60 {
        let s = projection_distinguisher(64, 4, m).unwrap().success;
        assert!(s >= prev, "copies {m}");
        prev = s;
    }
}

#[test]
fn grover_success_grows_with_budget() {
    let (n, w) = (256, 4);
    let j = grover_iterations(n, w);
    let mut prev = 0.0;
    for runs in 0..=3 {
        let r = grover_distinguisher(n, w, runs * (j + 1), 4000, 8).unwrap();
        assert!(
            r.success >= prev - 0.02,
            "runs {runs}: {} after {prev}",
            r.success
        );
        prev = r.success;
    }
    assert!(prev > 0.9);
}
