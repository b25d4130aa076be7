use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lp::{solve_certified, DegreeCertificate, LpConstraint, LpFamily, LpInstance};
use crate::bounds::BoundCheck;
use crate::error::{Error, Result};
use crate::poly::{chebyshev, int, rat, Polynomial, Rational};

/// Constraints on `p`: `|p(1/k)| ≤ 1` for `k ∈ [2w]`, `p(1/w) ≤ 1/3` and
/// `p(1/(2w)) ≥ 2/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FedjaInstance {
    pub w: usize,
}

impl FedjaInstance {
    pub fn new(w: usize) -> Result<Self> {
        if w < 2 {
            return Err(Error::Precondition(format!("w = {w} must be at least 2")));
        }
        Ok(FedjaInstance { w })
    }

    pub fn points(&self) -> Vec<Rational> {
        (1..=2 * self.w as i64).map(|k| rat(1, k)).collect()
    }

    pub fn low_threshold() -> Rational {
        rat(1, 3)
    }

    pub fn high_threshold() -> Rational {
        rat(2, 3)
    }

    /// The constraint system at a given degree, `|p| ≤ 1` split in two.
    pub fn lp(&self, degree: usize) -> LpInstance {
        let mut constraints = Vec::with_capacity(4 * self.w + 2);
        for x in self.points() {
            constraints.push(LpConstraint::le(x.clone(), int(1)));
            constraints.push(LpConstraint::ge(x, int(-1)));
        }
        let w = self.w as i64;
        constraints.push(LpConstraint::le(rat(1, w), Self::low_threshold()));
        constraints.push(LpConstraint::ge(rat(1, 2 * w), Self::high_threshold()));
        LpInstance {
            family: LpFamily::Polynomial { degree },
            constraints,
        }
    }
}

/// Smallest `m` with `m³ ≥ w`.
pub fn cube_root_ceil(w: usize) -> usize {
    let mut m = 1usize;
    while m * m * m < w {
        m += 1;
    }
    m
}

/// Parameters of a successful construction `p = α·s·u·v + β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FedjaConstruction {
    pub w: usize,
    /// Number of root factors in `u = Π_{j≤m} (1 - j x)`.
    pub m: usize,
    /// Degree of the Chebyshev factor `v(x) = T_{m'}(2 m x - 1)`.
    pub chebyshev_degree: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub poly: Polynomial,
}

/// Output scales tried, largest first.
const ALPHA_SCHEDULE: [(i64, i64); 10] = [
    (1, 1),
    (9, 10),
    (4, 5),
    (7, 10),
    (3, 5),
    (1, 2),
    (2, 5),
    (3, 10),
    (1, 5),
    (1, 10),
];

/// Largest allowed excess of the construction degree over `2m`.
pub const FEDJA_DEGREE_SLACK: usize = 4;

/// Root-product times affinely adjusted Chebyshev construction.
///
/// `u = Π_{j=1}^{m} (1 - j x)` vanishes on `1, 1/2, …, 1/m` with
/// `m = ⌈w^{1/3}⌉`, and `v = T_{m'}(2 m x - 1)` is bounded on `[0, 1/m]`
/// with its steep end near `0`. The product is calibrated as
/// `α·(-1)^{m'}·u·v + β`, with `α` taken from a fixed schedule and `β` the
/// midpoint of its exact feasible interval. The Chebyshev degree is tried in
/// the order `m, m-1, m+1, m-2, …` within total degree `2m + 4`.
pub fn fedja_construct(w: usize) -> Result<Polynomial> {
    fedja_construct_detailed(w).map(|c| c.poly)
}

pub fn fedja_construct_detailed(w: usize) -> Result<FedjaConstruction> {
    if w < 8 {
        return Err(Error::Precondition(format!(
            "construction needs w ≥ 8, got {w}"
        )));
    }
    let inst = FedjaInstance { w };
    let m = cube_root_ceil(w);
    let mut u = Polynomial::constant(int(1));
    for j in 1..=m as i64 {
        u = u.mul(&Polynomial::from_ints(&[1, -j]));
    }
    let mut order = vec![m];
    for delta in 1..=FEDJA_DEGREE_SLACK {
        if m > delta {
            order.push(m - delta);
        }
        order.push(m + delta);
    }
    let points = inst.points();
    let x_low = rat(1, w as i64);
    let x_high = rat(1, 2 * w as i64);
    let mut last_failure = String::new();
    for mp in order {
        let sign = if mp % 2 == 0 { int(1) } else { int(-1) };
        let v = chebyshev(mp).compose_linear(&int(2 * m as i64), &int(-1));
        let f = u.mul(&v).scale(&sign);
        let values: Vec<Rational> = points.iter().map(|x| f.eval(x)).collect();
        let fmin = values.iter().min().expect("nonempty");
        let fmax = values.iter().max().expect("nonempty");
        let f_low = f.eval(&x_low);
        let f_high = f.eval(&x_high);
        for (n, d) in ALPHA_SCHEDULE {
            let alpha = rat(n, d);
            let lower = crate::poly::max_ref(
                &(int(-1) - &alpha * fmin),
                &(FedjaInstance::high_threshold() - &alpha * &f_high),
            )
            .clone();
            let upper_a = int(1) - &alpha * fmax;
            let upper_b = FedjaInstance::low_threshold() - &alpha * &f_low;
            let upper = if upper_a < upper_b { upper_a } else { upper_b };
            if lower <= upper {
                let beta = (&lower + &upper) / int(2);
                let poly = f.scale(&alpha).add_constant(&beta);
                return Ok(FedjaConstruction {
                    w,
                    m,
                    chebyshev_degree: mp,
                    alpha,
                    beta,
                    poly,
                });
            }
            last_failure =
                format!("m' = {mp}, alpha = {alpha}: offset interval [{lower}, {upper}] is empty");
        }
    }
    Err(Error::Construction(format!(
        "w = {w}: adjustment schedule exhausted; last attempt {last_failure}"
    )))
}

/// Which constraint a [`FedjaCheck`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FedjaConstraint {
    /// `|p(1/k)| ≤ 1`.
    Bounded { k: usize },
    /// `p(1/w) ≤ 1/3`.
    Low,
    /// `p(1/(2w)) ≥ 2/3`, stored as `2/3 ≤ p(1/(2w))`.
    High,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FedjaCheck {
    pub constraint: FedjaConstraint,
    pub check: BoundCheck,
}

/// One exact check per constraint: `2w` boundedness checks then the low and
/// high thresholds. Violations are reported, not raised.
pub fn validate_fedja(p: &Polynomial, w: usize) -> Vec<FedjaCheck> {
    let mut out = Vec::with_capacity(2 * w + 2);
    for k in 1..=2 * w {
        let v = p.eval(&rat(1, k as i64));
        out.push(FedjaCheck {
            constraint: FedjaConstraint::Bounded { k },
            check: BoundCheck::new(v.abs(), int(1)),
        });
    }
    out.push(FedjaCheck {
        constraint: FedjaConstraint::Low,
        check: BoundCheck::new(p.eval(&rat(1, w as i64)), FedjaInstance::low_threshold()),
    });
    out.push(FedjaCheck {
        constraint: FedjaConstraint::High,
        check: BoundCheck::new(
            FedjaInstance::high_threshold(),
            p.eval(&rat(1, 2 * w as i64)),
        ),
    });
    out
}

pub fn fedja_all_pass(checks: &[FedjaCheck]) -> bool {
    checks.iter().all(|c| c.check.satisfied)
}

/// Result of the minimal-degree search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegree {
    pub w: usize,
    pub degree_cap: usize,
    /// `None` when the system is infeasible at every degree up to the cap.
    pub d_min: Option<usize>,
    /// Feasible witness at `d_min`.
    pub at_min: Option<DegreeCertificate>,
    /// Infeasibility certificate at `d_min - 1`, or at the cap when not found.
    pub below: Option<DegreeCertificate>,
}

/// Default search cap: the construction degree, or `2w` below its range.
pub fn default_degree_cap(w: usize) -> Result<usize> {
    if w >= 8 {
        Ok(fedja_construct(w)?.degree())
    } else {
        Ok(2 * w)
    }
}

/// Smallest degree at which the constraint system is feasible, with an exact
/// certificate on each side. Feasibility is monotone in the degree, so the
/// search doubles until feasible, then bisects; it never solves far above
/// the answer however large the cap.
pub fn min_degree_lp(w: usize, degree_cap: usize) -> Result<MinDegree> {
    if degree_cap < 1 {
        return Err(Error::Precondition("degree_cap must be at least 1".into()));
    }
    let inst = FedjaInstance::new(w)?;
    let solve = |d: usize| solve_certified(&inst.lp(d));
    let bottom = solve(0)?;
    if bottom.is_feasible() {
        return Ok(MinDegree {
            w,
            degree_cap,
            d_min: Some(0),
            at_min: Some(bottom),
            below: None,
        });
    }
    // Invariant: infeasible at lo, feasible at hi.
    let (mut lo, mut lo_cert) = (0usize, bottom);
    let (mut hi, mut hi_cert) = loop {
        let d = (2 * lo).max(1).min(degree_cap);
        let c = solve(d)?;
        if c.is_feasible() {
            break (d, c);
        }
        if d == degree_cap {
            return Ok(MinDegree {
                w,
                degree_cap,
                d_min: None,
                at_min: None,
                below: Some(c),
            });
        }
        lo = d;
        lo_cert = c;
    };
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let c = solve(mid)?;
        if c.is_feasible() {
            hi = mid;
            hi_cert = c;
        } else {
            lo = mid;
            lo_cert = c;
        }
    }
    Ok(MinDegree {
        w,
        degree_cap,
        d_min: Some(hi),
        at_min: Some(hi_cert),
        below: Some(lo_cert),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub w: usize,
    pub d_min: Option<usize>,
    /// Degree of the explicit construction, when `w ≥ 8`.
    pub construction_degree: Option<usize>,
    pub margin_at_min: Option<Rational>,
    pub margin_below: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeScan {
    pub rows: Vec<DegreeRow>,
    /// Least-squares slope of `ln d_min` against `ln w`.
    pub slope: Option<f64>,
    /// Mean of `d_min / w^{1/3}` over the rows.
    pub cube_root_constant: Option<f64>,
}

/// Runs [`min_degree_lp`] for each `w` (in parallel) and fits the growth
/// exponent.
pub fn degree_scaling_scan(w_list: &[usize]) -> Result<DegreeScan> {
    let mut rows = w_list
        .par_iter()
        .map(|&w| -> Result<DegreeRow> {
            let construction_degree = if w >= 8 {
                Some(fedja_construct(w)?.degree())
            } else {
                None
            };
            let cap = construction_degree.unwrap_or(2 * w);
            let r = min_degree_lp(w, cap)?;
            Ok(DegreeRow {
                w,
                d_min: r.d_min,
                construction_degree,
                margin_at_min: r.at_min.map(|c| c.verification_margin),
                margin_below: r.below.map(|c| c.verification_margin),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.w);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| match r.d_min {
            Some(d) if d > 0 => Some(((r.w as f64).ln(), (d as f64).ln())),
            _ => None,
        })
        .collect();
    let slope = least_squares_slope(&pts);
    let consts: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.d_min.map(|d| d as f64 / (r.w as f64).cbrt()))
        .collect();
    let cube_root_constant =
        (!consts.is_empty()).then(|| consts.iter().sum::<f64>() / consts.len() as f64);
    Ok(DegreeScan {
        rows,
        slope,
        cube_root_constant,
    })
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let distinct_x = pts.iter().any(|p| p.0 != pts[0].0);
    if pts.len() < 2 || !distinct_x {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `true` when `p` vanishes at `1/k` for every `k ≤ m`.
pub fn vanishes_on_first_inverse_points(p: &Polynomial, m: usize) -> bool {
    (1..=m as i64).all(|k| p.eval(&rat(1, k)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::lp::CertificateKind;

    #[test]
    fn cube_roots() {
        assert_eq!(cube_root_ceil(8), 2);
        assert_eq!(cube_root_ceil(9), 3);
        assert_eq!(cube_root_ceil(27), 3);
        assert_eq!(cube_root_ceil(1000), 10);
    }

    #[test]
    fn construction_w27() {
        let c = fedja_construct_detailed(27).unwrap();
        assert_eq!(c.m, 3);
        let checks = validate_fedja(&c.poly, 27);
        assert_eq!(checks.len(), 56);
        assert!(fedja_all_pass(&checks));
        assert!(c.poly.degree() <= 2 * 3 + FEDJA_DEGREE_SLACK);
        assert!(c.poly.eval(&rat(1, 27)) <= rat(1, 3));
        assert!(c.poly.eval(&rat(1, 54)) >= rat(2, 3));
    }

    #[test]
    fn root_factor_vanishes() {
        let c = fedja_construct_detailed(27).unwrap();
        // u·v vanishes at 1, 1/2, 1/3, so p equals the offset there.
        let product = c.poly.add_constant(&-c.beta.clone());
        assert!(vanishes_on_first_inverse_points(&product, 3));
        assert!(!product.eval(&rat(1, 4)).is_zero());
    }

    #[test]
    fn validation_examples() {
        let zero = validate_fedja(&Polynomial::zero(), 8);
        assert!(zero[..16].iter().all(|c| c.check.satisfied));
        assert!(zero[16].check.satisfied);
        assert!(!zero[17].check.satisfied);
        let one = validate_fedja(&Polynomial::constant(int(1)), 8);
        assert!(!one[16].check.satisfied);
        assert_eq!(one[16].constraint, FedjaConstraint::Low);
    }

    #[test]
    fn small_w_is_rejected() {
        assert!(matches!(fedja_construct(4), Err(Error::Precondition(_))));
    }

    #[test]
    fn w2_has_linear_witness() {
        let r = min_degree_lp(2, 4).unwrap();
        assert_eq!(r.d_min, Some(1));
        let at = r.at_min.unwrap();
        let CertificateKind::FeasibleWitness(p) = &at.kind else {
            panic!("expected witness")
        };
        assert!(fedja_all_pass(&validate_fedja(p, 2)));
        assert!(!r.below.unwrap().is_feasible());
        let hand = Polynomial::monomial(vec![int(1), rat(-4, 3)]);
        assert!(fedja_all_pass(&validate_fedja(&hand, 2)));
    }

    #[test]
    fn zero_margin_degree_is_feasible() {
        // For w = 3 a line meets every constraint with equality at 1, 1/3, 1/6.
        let r = min_degree_lp(3, 6).unwrap();
        assert_eq!(r.d_min, Some(1));
        assert!(r.at_min.unwrap().verification_margin.is_zero());
    }
}
