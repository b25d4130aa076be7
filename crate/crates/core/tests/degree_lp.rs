use laurent_lab::degree::*;
use laurent_lab::poly::{int, rat, Polynomial};
use num_traits::Signed;

fn check_min_degree(r: &MinDegree) {
    let inst = FedjaInstance::new(r.w).unwrap();
    let d = r.d_min.expect("feasible within cap");
    let at = r.at_min.as_ref().unwrap();
    assert!(at.is_feasible());
    assert_eq!(at.degree(), d);
    assert_eq!(at.verify(&inst.lp(d)).unwrap(), at.verification_margin);
    assert!(!at.verification_margin.is_negative());
    if d > 0 {
        let below = r.below.as_ref().unwrap();
        assert!(!below.is_feasible());
        assert!(below.verification_margin.is_positive());
        assert_eq!(
            below.verify(&inst.lp(d - 1)).unwrap(),
            below.verification_margin
        );
    }
}

#[test]
fn small_w_fixtures() {
    // (w, d_min), fixed by an independent float LP oracle.
    for (w, expected) in [(2, 1), (3, 1), (8, 2), (16, 3), (27, 3)] {
        let cap = default_degree_cap(w).unwrap();
        let r = min_degree_lp(w, cap).unwrap();
        assert_eq!(r.d_min, Some(expected), "w = {w}");
        check_min_degree(&r);
    }
}

#[test]
fn generous_cap_gives_the_same_answer() {
    for (w, cap) in [(27, 500), (256, 1024)] {
        let r = min_degree_lp(w, cap).unwrap();
        let tight = min_degree_lp(w, default_degree_cap(w).unwrap()).unwrap();
        assert_eq!(r.d_min, tight.d_min, "w = {w}");
        check_min_degree(&r);
    }
    let r = min_degree_lp(64, 2).unwrap();
    assert_eq!(r.d_min, None);
    assert!(!r.below.unwrap().is_feasible());
}

#[test]
fn w2_optimum_and_hand_witness() {
    let r = min_degree_lp(2, 4).unwrap();
    assert_eq!(r.at_min.unwrap().verification_margin, rat(1, 9));
    let hand = Polynomial::monomial(vec![int(1), rat(-4, 3)]);
    assert!(fedja_all_pass(&validate_fedja(&hand, 2)));
}

#[test]
fn w8_witness_spot_check() {
    let r = min_degree_lp(8, default_degree_cap(8).unwrap()).unwrap();
    let CertificateKind::FeasibleWitness(p) = &r.at_min.unwrap().kind else {
        panic!("expected a polynomial witness");
    };
    assert!(p.degree() <= 2);
    assert!(fedja_all_pass(&validate_fedja(p, 8)));
}

#[test]
fn scan_is_monotone_and_sandwiched() {
    let scan = degree_scaling_scan(&[64, 128, 256]).unwrap();
    let d: Vec<_> = scan.rows.iter().map(|r| r.d_min.unwrap()).collect();
    assert_eq!(d, vec![5, 6, 8]);
    for r in &scan.rows {
        let c = r.construction_degree.unwrap();
        assert!(r.d_min.unwrap() <= c);
        assert!(c <= 2 * cube_root_ceil(r.w) + FEDJA_DEGREE_SLACK);
        assert!(r.margin_below.as_ref().unwrap().is_positive());
    }
}

#[test]
fn laurent_frontier_fixture() {
    // Least feasible deg u for deg v = 0..=4 at N = 256, w = 16.
    let g = laurent_frontier_lp(256, 16, 12, 4).unwrap();
    let frontier: Vec<Option<usize>> = g.frontier().into_iter().map(|(_, du)| du).collect();
    assert_eq!(frontier, vec![Some(5), Some(3), Some(3), Some(3), Some(1)]);
    assert!(g.is_monotone());
    for c in &g.cells {
        if !c.feasible {
            assert!(c.margin.is_positive());
        }
    }
}

#[test]
fn laurent_certificates_reverify() {
    for (du, dv) in [(2, 2), (3, 1), (4, 0), (5, 0), (1, 4)] {
        let inst = laurent_instance(256, 16, du, dv).unwrap();
        let c = solve_certified(&inst).unwrap();
        assert_eq!(c.verify(&inst).unwrap(), c.verification_margin);
    }
}
