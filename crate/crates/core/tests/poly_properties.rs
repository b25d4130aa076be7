use laurent_lab::poly::{chebyshev, int, range_on_interval, rat, to_f64, Polynomial, Rational};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Polynomial {
    let d = rng.random_range(0..=max_deg);
    let coeffs = (0..=d)
        .map(|_| rat(rng.random_range(-1000..=1000), 1000))
        .collect();
    Polynomial::monomial(coeffs)
}

#[test]
fn chebyshev_derivative_at_one() {
    for d in 0..=64usize {
        let v = chebyshev(d).derivative().eval(&int(1));
        assert_eq!(v, int((d * d) as i64), "d = {d}");
    }
}

#[test]
fn range_sandwiches_dense_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = rat(1, 1_000_000);
    for _ in 0..100 {
        let p = random_poly(&mut rng, 12);
        let a = rat(rng.random_range(-200..100), 100);
        let b = &a + rat(rng.random_range(1..300), 100);
        let r = range_on_interval(&p, &a, &b, &tol).unwrap();
        assert!(r.lo <= r.hi);
        assert!((p.eval(&r.witness_lo) - &r.lo).abs() <= tol);
        assert!((p.eval(&r.witness_hi) - &r.hi).abs() <= tol);
        let lo_bar = &r.lo - &tol;
        let hi_bar = &r.hi + &tol;
        for i in 0..=400 {
            let x = &a + (&b - &a) * rat(i, 400);
            let v = p.eval(&x);
            assert!(v >= lo_bar && v <= hi_bar, "p = {p}, x = {x}");
        }
    }
}

#[test]
fn affine_compose_preserves_degree_and_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let tol = rat(1, 1_000_000);
    for _ in 0..50 {
        let p = random_poly(&mut rng, 10);
        let a = rat(rng.random_range(-100..100), 10);
        let b = &a + rat(rng.random_range(1..100), 10);
        let q = p.affine_compose(&a, &b).unwrap();
        assert_eq!(q.degree(), p.degree());
        // q runs over [a, b] as p runs over [-1, 1].
        let rp = range_on_interval(&p, &int(-1), &int(1), &tol).unwrap();
        let rq = range_on_interval(&q, &a, &b, &tol).unwrap();
        assert!((&rp.hi - &rq.hi).abs() <= tol);
        assert!((&rp.lo - &rq.lo).abs() <= tol);
    }
}

proptest! {
    #[test]
    fn derivative_matches_finite_difference(
        coeffs in prop::collection::vec(-1000i64..=1000, 1..10),
        xi in -900i64..900,
    ) {
        let p = Polynomial::from_ints(&coeffs);
        let x = xi as f64 / 1000.0;
        let h = 1e-5;
        let fd = (p.eval_f64(x + h) - p.eval_f64(x - h)) / (2.0 * h);
        let exact = to_f64(&p.derivative().eval(&Rational::from_float(x).unwrap()));
        let scale = exact.abs().max(coeffs.iter().map(|c| c.abs() as f64).sum::<f64>());
        prop_assert!((fd - exact).abs() <= 1e-6 * scale.max(1.0), "fd {} exact {}", fd, exact);
    }

    #[test]
    fn chebyshev_basis_roundtrip(coeffs in prop::collection::vec(-50i64..=50, 1..12), a in -5i64..5, w in 1i64..6) {
        let p = Polynomial::from_ints(&coeffs);
        let (a, b) = (int(a), int(a + w));
        let c = p.to_chebyshev(&a, &b).unwrap();
        prop_assert_eq!(c.to_monomial(), p.clone());
        for i in 0..=4 {
            let x = &a + rat(i * w, 4);
            prop_assert_eq!(c.eval(&x), p.eval(&x));
        }
    }
}
