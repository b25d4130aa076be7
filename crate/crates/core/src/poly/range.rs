use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::check_interval;
use super::sturm::{simplest_between, touch_point, touches_zero_from_above};
use super::{int, Polynomial, Rational};
use crate::error::{Error, Result};

/// Certified enclosure of the extrema of a polynomial on a closed interval.
///
/// `lo` and `hi` are values attained by the polynomial on the interval; the
/// true minimum and maximum lie in `[lo - tol, lo]` and `[hi, hi + tol]`
/// with `tol = certified_tolerance`. When an extremum is a rational value
/// attained at an irrational point it is recovered exactly and
/// `exact_lo` / `exact_hi` is set; the witness is then the best refinement
/// point, within `tol` in value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub lo: Rational,
    pub hi: Rational,
    pub certified_tolerance: Rational,
    pub witness_lo: Rational,
    pub witness_hi: Rational,
    /// `lo` is the exact minimum.
    pub exact_lo: bool,
    /// `hi` is the exact maximum.
    pub exact_hi: bool,
}

impl RangeReport {
    /// Attained range width `hi - lo`, a lower bound on the true width.
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Attained `max |p|`.
    pub fn max_abs(&self) -> Rational {
        super::max_ref(&self.hi.abs(), &self.lo.abs()).clone()
    }
}

const MAX_LEVEL: u32 = 120;
const MAX_CELLS: usize = 4_000_000;

/// A dyadic cell `[i/2^L, (i+1)/2^L]` of the unit parameter interval,
/// carrying `C(s) = D·2^{dL}·q((i + s)/2^L)` with integer coefficients.
struct Cell {
    level: u32,
    index: u128,
    c: Vec<BigInt>,
}

/// Exact value `num / den` with `den > 0`, compared without reducing.
#[derive(Clone)]
struct Frac {
    num: BigInt,
    den: BigInt,
}

impl Frac {
    fn gt(&self, other: &Frac) -> bool {
        &self.num * &other.den > &other.num * &self.den
    }
    fn lt(&self, other: &Frac) -> bool {
        &self.num * &other.den < &other.num * &self.den
    }
    fn offset(&self, tol: &Rational) -> Frac {
        Frac {
            num: &self.num * tol.denom() + tol.numer() * &self.den,
            den: &self.den * tol.denom(),
        }
    }
    fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }
}

/// Certified min and max of `p` on `[a, b]` to within `tol`.
///
/// The interval is pulled back to `[0, 1]` and cleared of denominators, then
/// split dyadically. On each cell the Taylor coefficients at the left end
/// bound the polynomial from both sides: `C(s) ≤ C_0 + Σ_{j≥1} max(C_j, 0)`
/// for `s ∈ [0, 1]`. Cells whose bounds cannot beat the best attained value
/// by more than `tol` are discarded, the rest are halved. All arithmetic is
/// exact integer arithmetic.
///
/// Before splitting, the best values on a dyadic probe grid (and the
/// simplest rationals just beyond them) are tried as exact extremes with a
/// Sturm count; a confirmed side is never refined.
pub fn range_on_interval(
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    tol: &Rational,
) -> Result<RangeReport> {
    check_interval(a, b)?;
    if !tol.is_positive() {
        return Err(Error::BadTolerance(tol.to_string()));
    }
    let h = b - a;
    let q = p.to_monomial().compose_linear(&h, a);
    let d = q.degree();
    let at = |index: u128, level: u32| -> Rational {
        a + &h * Rational::new(BigInt::from(index), BigInt::one() << level as usize)
    };
    if d == 0 {
        let c = q.coeffs()[0].clone();
        return Ok(RangeReport {
            lo: c.clone(),
            hi: c,
            certified_tolerance: tol.clone(),
            witness_lo: a.clone(),
            witness_hi: a.clone(),
            exact_lo: true,
            exact_hi: true,
        });
    }

    let denom = q
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let root: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    let scale = |level: u32| -> BigInt { &denom << (d * level as usize) };

    // Exact values on a dyadic grid; an extreme attained there is confirmed
    // by a Sturm count and needs no refinement.
    let probe_level = (PROBE_CELLS_PER_DEGREE * d)
        .next_power_of_two()
        .trailing_zeros();
    let probes = probe_grid(&root, probe_level);
    let probe_den = scale(probe_level);
    let best = |better: fn(&BigInt, &BigInt) -> bool| -> (Frac, Rational) {
        let (i, v) = probes
            .iter()
            .enumerate()
            .reduce(|x, y| if better(y.1, x.1) { y } else { x })
            .expect("grid has both endpoints");
        let f = Frac {
            num: v.clone(),
            den: probe_den.clone(),
        };
        (f, at(i as u128, probe_level))
    };
    let (mut hi, mut hi_at) = best(|x, y| x > y);
    let (mut lo, mut lo_at) = best(|x, y| x < y);
    let monomial = p.to_monomial();
    let reach = (hi.to_rational() - lo.to_rational()) / int(PROBE_REACH);
    let exact_side = |v: &mut Frac, witness: &mut Rational, sign: i64| -> bool {
        let r = v.to_rational();
        if grid_stationary(&root, &probes, probe_level, &v.num, sign)
            && attains_bound(&monomial, a, b, &r, sign)
        {
            return true;
        }
        // A simple value just past the grid extreme, met off the grid.
        let c = if sign > 0 {
            simplest_between(&r, &(&r + &reach))
        } else {
            simplest_between(&(&r - &reach), &r)
        };
        if c == r || c.denom().bits() > SNAP_DENOM_BITS {
            return false;
        }
        let Some(x) = touch_point(&gap(&monomial, &c, sign), a, b, tol) else {
            return false;
        };
        *v = Frac {
            num: c.numer().clone(),
            den: c.denom().clone(),
        };
        *witness = x;
        true
    };
    let hi_exact = exact_side(&mut hi, &mut hi_at, 1);
    let lo_exact = exact_side(&mut lo, &mut lo_at, -1);
    let mut hi_bar = hi.offset(tol);
    let mut lo_bar = lo.offset(&-tol);

    let mut queue = Vec::new();
    if !(hi_exact && lo_exact) {
        queue.push(Cell {
            level: 0,
            index: 0,
            c: root,
        });
    }
    let mut processed = 0usize;
    while !queue.is_empty() {
        let mut next = Vec::new();
        for cell in queue {
            processed += 1;
            if processed > MAX_CELLS {
                return Err(Error::ToleranceUnreachable {
                    tol: tol.to_string(),
                    cells: MAX_CELLS,
                });
            }
            let den = scale(cell.level);
            let left = Frac {
                num: cell.c[0].clone(),
                den: den.clone(),
            };
            let right = Frac {
                num: cell.c.iter().sum(),
                den: den.clone(),
            };
            for (v, idx) in [(left, cell.index), (right, cell.index + 1)] {
                if v.gt(&hi) {
                    hi_bar = v.offset(tol);
                    hi = v;
                    hi_at = at(idx, cell.level);
                } else if v.lt(&lo) {
                    lo_bar = v.offset(&-tol);
                    lo = v;
                    lo_at = at(idx, cell.level);
                }
            }
            let mut up = cell.c[0].clone();
            let mut down = cell.c[0].clone();
            for cj in &cell.c[1..] {
                if cj.is_positive() {
                    up += cj;
                } else {
                    down += cj;
                }
            }
            let up = Frac {
                num: up,
                den: den.clone(),
            };
            let down = Frac { num: down, den };
            if !((!hi_exact && up.gt(&hi_bar)) || (!lo_exact && down.lt(&lo_bar))) {
                continue;
            }
            if cell.level >= MAX_LEVEL {
                return Err(Error::ToleranceUnreachable {
                    tol: tol.to_string(),
                    cells: processed,
                });
            }
            let (l, r) = split(&cell.c);
            next.push(Cell {
                level: cell.level + 1,
                index: cell.index * 2,
                c: l,
            });
            next.push(Cell {
                level: cell.level + 1,
                index: cell.index * 2 + 1,
                c: r,
            });
        }
        queue = next;
    }

    let mut report = RangeReport {
        lo: lo.to_rational(),
        hi: hi.to_rational(),
        certified_tolerance: tol.clone(),
        witness_lo: lo_at,
        witness_hi: hi_at,
        exact_lo: lo_exact,
        exact_hi: hi_exact,
    };
    if !(hi_exact && lo_exact) {
        recover_exact(&monomial, a, b, &mut report);
    }
    Ok(report)
}

/// Grid cells per unit of degree for the exact probe.
const PROBE_CELLS_PER_DEGREE: usize = 4;

/// Fraction of the probed spread searched past a grid extreme.
const PROBE_REACH: i64 = 4;

/// `Σ_j c_j i^j M^{d-j}` for `i = 0..=M`, `M = 2^level`: the cell polynomial
/// at `i/M`, over the common denominator `M^d`.
fn probe_grid(c: &[BigInt], level: u32) -> Vec<BigInt> {
    let d = c.len() - 1;
    let m = 1u128 << level;
    let scaled: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(j, x)| x << ((d - j) * level as usize))
        .collect();
    (0..=m)
        .map(|i| {
            let i = BigInt::from(i);
            scaled[..d]
                .iter()
                .rev()
                .fold(scaled[d].clone(), |acc, x| acc * &i + x)
        })
        .collect()
}

/// Whether every grid point reaching `v` passes the first-order test for a
/// max (`sign = 1`) or min: zero slope inside, slope pointing out at an end.
fn grid_stationary(c: &[BigInt], probes: &[BigInt], level: u32, v: &BigInt, sign: i64) -> bool {
    let d = c.len() - 1;
    let m = probes.len() - 1;
    let slope: Vec<BigInt> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, x)| (x * BigInt::from(j)) << ((d - j) * level as usize))
        .collect();
    probes.iter().enumerate().filter(|(_, p)| *p == v).all(|(i, _)| {
        let t = BigInt::from(i);
        let s = slope[..d - 1]
            .iter()
            .rev()
            .fold(slope[d - 1].clone(), |acc, x| acc * &t + x)
            * sign;
        if i == 0 {
            !s.is_positive()
        } else if i == m {
            !s.is_negative()
        } else {
            s.is_zero()
        }
    })
}

/// Coefficients of `sign·(c - p)` for monomial `p`.
fn gap(m: &Polynomial, c: &Rational, sign: i64) -> Vec<Rational> {
    let s = Rational::from_integer(sign.into());
    m.coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| if i == 0 { (c - x) * &s } else { -x * &s })
        .collect()
}

/// Whether `c` is exactly the max (`sign = 1`) or min (`sign = -1`) of `p`.
fn attains_bound(m: &Polynomial, a: &Rational, b: &Rational, c: &Rational, sign: i64) -> bool {
    touches_zero_from_above(&gap(m, c, sign), a, b)
}

/// Largest denominator tried when snapping an extremum to a rational.
const SNAP_DENOM_BITS: u64 = 64;

/// Replaces `hi` (`lo`) by the simplest rational in its certified window
/// when Sturm sequences show it is the exact maximum (minimum).
fn recover_exact(m: &Polynomial, a: &Rational, b: &Rational, r: &mut RangeReport) {
    let tol = &r.certified_tolerance;
    if !r.exact_hi {
        let c = simplest_between(&r.hi, &(&r.hi + tol));
        if c.denom().bits() <= SNAP_DENOM_BITS && attains_bound(m, a, b, &c, 1) {
            r.hi = c;
            r.exact_hi = true;
        }
    }
    if !r.exact_lo {
        let c = simplest_between(&(&r.lo - tol), &r.lo);
        if c.denom().bits() <= SNAP_DENOM_BITS && attains_bound(m, a, b, &c, -1) {
            r.lo = c;
            r.exact_lo = true;
        }
    }
}

/// Halves a cell: `2^d·C(s/2)` and `2^d·C((1 + s)/2)`.
fn split(c: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = c.len() - 1;
    let left: Vec<BigInt> = c.iter().enumerate().map(|(j, x)| x << (d - j)).collect();
    // Taylor shift by one of 2^d·C(s/2).
    let mut shifted = left.clone();
    for i in 0..d {
        for j in (i..d).rev() {
            let (head, tail) = shifted.split_at_mut(j + 1);
            head[j] += &tail[0];
        }
    }
    (left, shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{chebyshev, int, rat};

    fn tol() -> Rational {
        rat(1, 1_000_000_000)
    }

    #[test]
    fn chebyshev_equioscillation() {
        let r = range_on_interval(&chebyshev(3), &int(-1), &int(1), &tol()).unwrap();
        assert_eq!((r.lo.clone(), r.hi.clone()), (int(-1), int(1)));
        assert!(r.witness_hi == int(1) || r.witness_hi == rat(-1, 2));
    }

    #[test]
    fn constant_and_square() {
        let r =
            range_on_interval(&Polynomial::constant(int(5)), &int(-3), &int(7), &tol()).unwrap();
        assert_eq!((r.lo, r.hi), (int(5), int(5)));
        let r = range_on_interval(&Polynomial::from_ints(&[0, 0, 1]), &int(0), &int(2), &tol())
            .unwrap();
        assert_eq!((r.lo, r.hi), (int(0), int(4)));
        assert_eq!((r.witness_lo, r.witness_hi), (int(0), int(2)));
    }

    #[test]
    fn interior_extremum_within_tolerance() {
        // 1 - (x - 1/3)^2 has max 1 at the non-dyadic point 1/3.
        let p = Polynomial::monomial(vec![rat(8, 9), rat(2, 3), int(-1)]);
        let t = tol();
        let r = range_on_interval(&p, &int(0), &int(1), &t).unwrap();
        assert_eq!(r.hi, int(1));
        assert!(r.exact_hi);
        assert!(int(1) - p.eval(&r.witness_hi) <= t);
        assert_eq!(r.lo, rat(5, 9));
    }

    #[test]
    fn rejects_bad_input() {
        let p = Polynomial::x();
        assert!(matches!(
            range_on_interval(&p, &int(1), &int(1), &tol()),
            Err(Error::BadInterval { .. })
        ));
        assert!(matches!(
            range_on_interval(&p, &int(0), &int(1), &int(0)),
            Err(Error::BadTolerance(_))
        ));
    }

    #[test]
    fn high_degree_chebyshev_is_fast_and_tight() {
        for d in [16usize, 32] {
            let t = tol();
            let r = range_on_interval(&chebyshev(d), &int(-1), &int(1), &t).unwrap();
            assert_eq!((r.lo, r.hi), (int(-1), int(1)));
            assert!(r.exact_lo && r.exact_hi);
        }
    }
}
