//! Executable forms of the approximation-theory inequalities used by the
//! lower-bound argument: Markov's derivative bound, Paturi's growth bound,
//! its shrunken-domain corollary and the discrete-vs-continuous range bound.
//!
//! Every checker measures both sides and returns the slack, so scans can see
//! how tight each inequality is, not only whether it holds.

pub mod outward;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{int, range_on_interval, rat, Polynomial, Rational};

/// Precision of transcendental bound values.
pub const BOUND_PRECISION_BITS: u32 = 128;

/// Range tolerance used by the checkers, `2^-40`.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 40))
}

/// Measured quantity against the bound it should respect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs ≤ rhs`.
    pub satisfied: bool,
    /// `lhs / rhs` when `rhs > 0`.
    pub slack_ratio: Option<Rational>,
}

impl BoundCheck {
    pub fn new(lhs: Rational, rhs: Rational) -> Self {
        let satisfied = lhs <= rhs;
        let slack_ratio = rhs.is_positive().then(|| &lhs / &rhs);
        BoundCheck {
            lhs,
            rhs,
            satisfied,
            slack_ratio,
        }
    }
}

/// Markov: `max |p'| ≤ H·deg(p)²/(b - a)` on `[a, b]`, `H` the range width.
pub fn markov_check(p: &Polynomial, a: &Rational, b: &Rational) -> Result<BoundCheck> {
    let d = p.degree();
    if d == 0 {
        return Err(Error::Precondition("markov_check needs deg(p) ≥ 1".into()));
    }
    let tol = default_tolerance();
    let range = range_on_interval(p, a, b, &tol)?;
    let deriv = range_on_interval(&p.derivative(), a, b, &tol)?;
    let rhs = range.width() / (b - a) * int((d * d) as i64);
    Ok(BoundCheck::new(deriv.max_abs(), rhs))
}

/// Outward-rounded `exp(2d·sqrt(2μ + μ²))`.
pub fn paturi_bound(d: usize, mu: &Rational) -> Rational {
    paturi_bound_with_precision(d, mu, BOUND_PRECISION_BITS)
}

pub fn paturi_bound_with_precision(d: usize, mu: &Rational, bits: u32) -> Rational {
    assert!(!mu.is_negative(), "mu must be nonnegative");
    let radicand = mu * int(2) + mu * mu;
    let exponent = outward::sqrt_up(&radicand, bits + 16) * int(2 * d as i64);
    outward::exp_up(&exponent, bits)
}

/// Paturi: if `|p| ≤ 1` on `[-1, 1]` then `|p(x)| ≤ paturi_bound(deg p, μ)`
/// for `x ∈ [1, 1 + μ]`.
///
/// The hypothesis is checked with a certified range on `[-1, 1]`; failing it
/// is a [`Error::Precondition`], distinct from an unsatisfied bound.
pub fn paturi_check(p: &Polynomial, mu: &Rational) -> Result<BoundCheck> {
    if mu.is_negative() {
        return Err(Error::Precondition(format!("mu = {mu} is negative")));
    }
    let tol = default_tolerance();
    let unit = range_on_interval(p, &int(-1), &int(1), &tol)?;
    if unit.max_abs() > int(1) {
        return Err(Error::Precondition(format!(
            "|p| ≤ 1 on [-1, 1] fails: |p({})| = {}",
            if unit.hi.abs() >= unit.lo.abs() {
                &unit.witness_hi
            } else {
                &unit.witness_lo
            },
            unit.max_abs()
        )));
    }
    let lhs = if mu.is_zero() {
        p.eval(&int(1)).abs()
    } else {
        range_on_interval(p, &int(1), &(int(1) + mu), &tol)?.max_abs()
    };
    Ok(BoundCheck::new(lhs, paturi_bound(p.degree(), mu)))
}

/// Shrunken domain: with `ε ≤ 1/(100 d²)` the range on `[a + ε(b - a), b]`
/// is at least half the range on `[a, b]`. Reported as `lhs = H/2`,
/// `rhs = shrunken range`.
pub fn shrink_range_check(
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    eps: &Rational,
) -> Result<BoundCheck> {
    let d = p.degree();
    if eps.is_negative() || *eps >= int(1) {
        return Err(Error::Precondition(format!("eps = {eps} outside [0, 1)")));
    }
    if d > 0 && *eps > rat(1, 100 * (d * d) as i64) {
        return Err(Error::Precondition(format!(
            "eps = {eps} exceeds 1/(100·{d}²)"
        )));
    }
    let tol = default_tolerance();
    let full = range_on_interval(p, a, b, &tol)?;
    let a_shrunk = a + eps * (b - a);
    let shrunk = range_on_interval(p, &a_shrunk, b, &tol)?;
    Ok(BoundCheck::new(full.width() / int(2), shrunk.width()))
}

/// Discrete-range check together with the rescaling that was applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteRangeCheck {
    pub check: BoundCheck,
    /// Length `N` of the rescaled interval `[0, N]`.
    pub rescaled_n: Rational,
    /// Factor `N / (hi - lo)` of the map `x ↦ (x - lo)·N/(hi - lo)`.
    pub scale: Rational,
}

/// Discrete vs continuous range: for `deg(p) ≤ √N` and points spanning
/// `[0, N]` with gaps at most 1, the discrete range is at least half the
/// continuous one.
///
/// `[lo, hi]` is rescaled to `[0, N]` with the largest `N` keeping every gap
/// at most 1, i.e. `N = (hi - lo) / max_gap`.
pub fn discrete_range_check(
    p: &Polynomial,
    points: &[Rational],
    lo: &Rational,
    hi: &Rational,
) -> Result<DiscreteRangeCheck> {
    check_points(points, lo, hi)?;
    let max_gap = points
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .max()
        .expect("at least two points");
    let n = (hi - lo) / max_gap;
    discrete_range_check_scaled(p, points, lo, hi, &n)
}

/// As [`discrete_range_check`] with an explicit target length `N`.
pub fn discrete_range_check_scaled(
    p: &Polynomial,
    points: &[Rational],
    lo: &Rational,
    hi: &Rational,
    n: &Rational,
) -> Result<DiscreteRangeCheck> {
    check_points(points, lo, hi)?;
    let scale = n / (hi - lo);
    for w in points.windows(2) {
        let gap = (&w[1] - &w[0]) * &scale;
        if gap > int(1) {
            return Err(Error::Precondition(format!(
                "rescaled gap {gap} between {} and {} exceeds 1",
                w[0], w[1]
            )));
        }
    }
    let d = p.degree();
    if int((d * d) as i64) > *n {
        return Err(Error::Precondition(format!(
            "deg(p) = {d} exceeds sqrt(N) for N = {n}"
        )));
    }
    let continuous = range_on_interval(p, lo, hi, &default_tolerance())?;
    let values: Vec<Rational> = points.iter().map(|z| p.eval(z)).collect();
    let dmax = values.iter().max().expect("nonempty");
    let dmin = values.iter().min().expect("nonempty");
    Ok(DiscreteRangeCheck {
        check: BoundCheck::new(continuous.width() / int(2), dmax - dmin),
        rescaled_n: n.clone(),
        scale,
    })
}

fn check_points(points: &[Rational], lo: &Rational, hi: &Rational) -> Result<()> {
    if lo >= hi {
        return Err(Error::BadInterval {
            a: lo.to_string(),
            b: hi.to_string(),
        });
    }
    if points.len() < 2 || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "points must be strictly increasing with at least two entries".into(),
        ));
    }
    if points[0] != *lo || points[points.len() - 1] != *hi {
        return Err(Error::Precondition(format!(
            "points must start at {lo} and end at {hi}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::chebyshev;

    #[test]
    fn markov_examples() {
        let c = markov_check(&chebyshev(5), &int(-1), &int(1)).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (int(25), int(25)));
        assert_eq!(c.slack_ratio, Some(int(1)));
        let c = markov_check(&Polynomial::x(), &int(0), &int(1)).unwrap();
        assert_eq!((c.lhs, c.rhs), (int(1), int(1)));
        let c = markov_check(&Polynomial::from_ints(&[0, 0, 1]), &int(0), &int(1)).unwrap();
        assert_eq!((c.lhs, c.rhs, c.satisfied), (int(2), int(4), true));
        assert!(markov_check(&Polynomial::constant(int(1)), &int(0), &int(1)).is_err());
    }

    #[test]
    fn paturi_bound_examples() {
        assert_eq!(paturi_bound(0, &rat(3, 7)), paturi_bound(0, &int(0)));
        let one = paturi_bound(0, &rat(3, 7));
        assert!(one >= int(1) && one - int(1) < rat(1, 1_000_000_000_000));
        let b = paturi_bound(1, &int(0));
        assert!(b >= int(1) && b - int(1) < rat(1, 1_000_000_000_000));
    }

    #[test]
    fn paturi_bound_against_mpmath_oracle() {
        // exp(16·sqrt(5/4)) to 60 digits, computed independently with mpmath.
        let oracle = "58734850.8578218885504363325317932431043643383972994554329025";
        let (int_part, frac_part) = oracle.split_once('.').unwrap();
        let digits = frac_part.len() as u32;
        let num: num_bigint::BigInt = format!("{int_part}{frac_part}").parse().unwrap();
        let exact_lo = Rational::new(num.clone(), num_bigint::BigInt::from(10).pow(digits));
        let exact_hi = Rational::new(num + 1, num_bigint::BigInt::from(10).pow(digits));
        let b = paturi_bound(8, &rat(1, 2));
        assert!(b >= exact_lo, "bound must not undercut the true value");
        let rel = crate::poly::to_f64(&((&b - &exact_hi) / &exact_hi));
        assert!(rel < 1e-30, "relative excess {rel}");
    }

    #[test]
    fn paturi_check_examples() {
        let c = paturi_check(&chebyshev(4), &int(0)).unwrap();
        assert_eq!(c.lhs, int(1));
        assert!(c.satisfied);
        let c = paturi_check(&Polynomial::constant(rat(1, 2)), &int(3)).unwrap();
        assert_eq!(c.lhs, rat(1, 2));
        assert!(c.satisfied);
        // T_6(5/4) = 4097/128 exactly; the bound is exp(9).
        let c = paturi_check(&chebyshev(6), &rat(1, 4)).unwrap();
        assert_eq!(c.lhs, rat(4097, 128));
        assert!(c.satisfied);
        let s = crate::poly::to_f64(c.slack_ratio.as_ref().unwrap());
        assert!((s - 32.0078125 / 8103.083927575384).abs() < 1e-12);
    }

    #[test]
    fn paturi_precondition_is_distinct() {
        let p = Polynomial::from_ints(&[0, 2]);
        assert!(matches!(
            paturi_check(&p, &rat(1, 4)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shrink_examples() {
        let c = shrink_range_check(&Polynomial::x(), &int(0), &int(1), &rat(1, 200)).unwrap();
        assert_eq!(c.rhs, rat(199, 200));
        assert!(c.satisfied);
        let c = shrink_range_check(&Polynomial::constant(int(3)), &int(0), &int(1), &rat(1, 2))
            .unwrap();
        assert_eq!((c.lhs, c.rhs, c.satisfied), (int(0), int(0), true));
        let t4 = chebyshev(4).affine_compose(&int(0), &int(1)).unwrap();
        let c = shrink_range_check(&t4, &int(0), &int(1), &rat(1, 1600)).unwrap();
        assert!(c.satisfied);
        assert_eq!(c.lhs, int(1));
        assert!(shrink_range_check(&t4, &int(0), &int(1), &rat(1, 1000)).is_err());
    }

    #[test]
    fn discrete_examples() {
        let pts: Vec<Rational> = (0..=10).map(int).collect();
        let c = discrete_range_check(&Polynomial::x(), &pts, &int(0), &int(10)).unwrap();
        assert_eq!(
            (c.check.lhs.clone(), c.check.rhs.clone()),
            (int(5), int(10))
        );
        assert_eq!(c.rescaled_n, int(10));
        let c =
            discrete_range_check(&Polynomial::constant(int(2)), &pts, &int(0), &int(10)).unwrap();
        assert!(c.check.satisfied && c.check.rhs.is_zero());

        let pts: Vec<Rational> = (0..=100).map(int).collect();
        let t3 = chebyshev(3).affine_compose(&int(0), &int(100)).unwrap();
        let c = discrete_range_check(&t3, &pts, &int(0), &int(100)).unwrap();
        assert!(c.check.satisfied);
        assert_eq!(c.check.lhs, int(1));
    }

    #[test]
    fn discrete_errors_name_the_problem() {
        let pts: Vec<Rational> = vec![int(0), int(1), int(3), int(4)];
        let e = discrete_range_check_scaled(&Polynomial::x(), &pts, &int(0), &int(4), &int(4))
            .unwrap_err();
        assert!(e.to_string().contains("gap 2"), "{e}");
        let pts: Vec<Rational> = (0..=4).map(int).collect();
        let e = discrete_range_check(&chebyshev(3), &pts, &int(0), &int(4)).unwrap_err();
        assert!(e.to_string().contains("deg(p) = 3"), "{e}");
    }
}
