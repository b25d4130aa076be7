//! Both ensembles are invariant under permutations of `[L]`. The module
//! spanned by `m`-subsets splits into irreducibles `V_j`, `0 ≤ j ≤ min(m, L-m)`,
//! each with multiplicity one and dimension `C(L, j) - C(L, j-1)`. Every
//! Gram block whose entries depend only on intersection sizes acts on `V_j`
//! as a scalar, so the signed Gram reduces to a 2×2 block per shared `j`.
//!
//! Writing an entry function as `f(t) = Σ_i β_i C(t, i)` expresses the block
//! through inclusion matrices `W_{i,m}`; on `V_j`,
//! `W_{i,a}ᵀ W_{i,b}` acts as `C(L-i-j, b-i) · C(a-j, i-j)` between the unit
//! embeddings of `V_j`, up to the factor `√(C(L-2j, a-j) / C(L-2j, b-j))`.
//! Everything stays rational until one square root per block.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gram::summarize;
use super::{TraceDistanceResult, TraceMethod};
use crate::error::{Error, Result};
use crate::poly::{binomial, to_f64, Rational};

/// Largest `L` for the reduced route.
pub const SYMMETRIC_MAX_L: u64 = 64;

fn c(n: i64, k: i64) -> BigInt {
    binomial(n, k)
}

fn ratio(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

/// `β_i = Σ_t (-1)^{i-t} C(i, t) f(t)` for `i = 0..=top`.
fn newton_coefficients(top: u64, f: impl Fn(u64) -> Rational) -> Vec<Rational> {
    let vals: Vec<Rational> = (0..=top).map(&f).collect();
    (0..=top as i64)
        .map(|i| {
            let mut acc = Rational::zero();
            for t in 0..=i {
                let term = Rational::from_integer(c(i, t)) * &vals[t as usize];
                if (i - t) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

/// Scalar of `Σ_i β_i W_{i,a}ᵀ W_{i,b}` on `V_j`, without the square-root factor.
fn intertwiner_scalar(l: i64, a: i64, b: i64, j: i64, beta: &[Rational]) -> Rational {
    let top = a.min(b);
    let mut acc = Rational::zero();
    for i in j..=top {
        let coeff = c(l - i - j, b - i) * c(a - j, i - j);
        if !coeff.is_zero() {
            acc += &beta[i as usize] * Rational::from_integer(coeff);
        }
    }
    acc
}

fn power_ratio(t: u64, k: u32, d: u64) -> Rational {
    num_traits::pow(ratio(BigInt::from(t), BigInt::from(d)), k as usize)
}

/// Eigenvalue of the weighted diagonal block `G_{mm} / C(L, m)` on `V_j`.
fn diagonal_block(l: i64, m: u64, k: u32, j: i64) -> Rational {
    let beta = newton_coefficients(m, |t| power_ratio(t, k, m));
    intertwiner_scalar(l, m as i64, m as i64, j, &beta) / Rational::from_integer(c(l, m as i64))
}

fn present(l: i64, m: i64, j: i64) -> bool {
    j <= m.min(l - m)
}

pub(crate) fn symmetric(l: u64, w1: u64, w2: u64, k: u32) -> Result<TraceDistanceResult> {
    if l > SYMMETRIC_MAX_L {
        return Err(Error::Budget {
            what: "symmetry-reduced universe size L",
            needed: l as u128,
            budget: SYMMETRIC_MAX_L as u128,
        });
    }
    let li = l as i64;
    let (a, b) = (w1 as i64, w2 as i64);
    let cross_beta = newton_coefficients(w1.min(w2), |t| {
        Rational::from_integer(num_traits::pow(BigInt::from(t), k as usize))
    });
    let ab_k = num_traits::pow(BigInt::from(w1 * w2), k as usize);
    let weight_ab = Rational::from_integer(c(li, a) * c(li, b));

    let mut trace_a = Rational::zero();
    let mut trace_b = Rational::zero();
    let mut signed = Rational::zero();
    let mut value = 0.0f64;
    let mut eigs: Vec<(f64, u128)> = Vec::new();
    let top = a.min(li - a).max(b.min(li - b));
    for j in 0..=top {
        let in_a = present(li, a, j);
        let in_b = present(li, b, j);
        if !in_a && !in_b {
            continue;
        }
        let mult = c(li, j) - c(li, j - 1);
        let mult_q = Rational::from_integer(mult.clone());
        let mult_u: u128 = mult.try_into().unwrap_or(u128::MAX);
        let mult_f = to_f64(&mult_q);
        let theta_a = if in_a {
            diagonal_block(li, w1, k, j)
        } else {
            Rational::zero()
        };
        let theta_b = if in_b {
            diagonal_block(li, w2, k, j)
        } else {
            Rational::zero()
        };
        if theta_a.is_negative() || theta_b.is_negative() {
            return Err(Error::Reduction(format!(
                "negative Gram eigenvalue on component {j}"
            )));
        }
        trace_a += &mult_q * &theta_a;
        trace_b += &mult_q * &theta_b;
        signed += &mult_q * (&theta_a - &theta_b);
        if in_a && in_b {
            let r = intertwiner_scalar(li, a, b, j, &cross_beta);
            let sigma_sq = &r * &r / Rational::from_integer(ab_k.clone()) / &weight_ab
                * ratio(c(li - 2 * j, a - j), c(li - 2 * j, b - j));
            let tr = &theta_a - &theta_b;
            let det = &sigma_sq - &theta_a * &theta_b;
            let disc = (&theta_a + &theta_b) * (&theta_a + &theta_b)
                - &sigma_sq * Rational::from_integer(4.into());
            if disc.is_negative() || det.is_positive() {
                return Err(Error::Reduction(format!(
                    "component {j}: cross block exceeds the diagonal blocks"
                )));
            }
            let (trf, sq) = (to_f64(&tr), to_f64(&disc).sqrt());
            let abs_sum = if det.is_zero() { trf.abs() } else { sq };
            value += mult_f * abs_sum;
            for e in [(trf + sq) / 2.0, (trf - sq) / 2.0] {
                eigs.push((e, mult_u));
            }
        } else if in_a {
            value += mult_f * to_f64(&theta_a);
            eigs.push((to_f64(&theta_a), mult_u));
        } else {
            value += mult_f * to_f64(&theta_b);
            eigs.push((-to_f64(&theta_b), mult_u));
        }
    }
    if !trace_a.is_one() || !trace_b.is_one() || !signed.is_zero() {
        return Err(Error::Reduction(format!(
            "block traces {trace_a}, {trace_b} are not both 1"
        )));
    }
    let mut summary = summarize(eigs);
    summary.signed_sum = to_f64(&signed);
    Ok(TraceDistanceResult {
        value: 0.5 * value,
        method: TraceMethod::SymmetryReduced,
        eigen_summary: summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_one_copy() {
        let r = symmetric(2, 1, 2, 1).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert_eq!(r.eigen_summary.nonzero, 2);
    }

    #[test]
    fn zero_copies_and_identical_sizes() {
        assert_eq!(symmetric(10, 2, 4, 0).unwrap().value, 0.0);
        assert_eq!(symmetric(10, 3, 3, 5).unwrap().value, 0.0);
    }

    #[test]
    fn largest_universe() {
        let r = symmetric(64, 32, 16, 7).unwrap();
        assert!((0.0..=1.0).contains(&r.value));
    }
}
