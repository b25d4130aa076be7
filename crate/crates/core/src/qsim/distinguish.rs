use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{binomial, rat, Rational};

/// Largest `N` for the Grover statevector.
pub const GROVER_MAX_N: usize = 1 << 14;

/// Copy multiplier for the projection test: `c₁·N/w` copies.
pub const PROJECTION_COPY_CONSTANT: f64 = 1.0;
/// Copy multiplier for the birthday test: `c₂·√w` copies.
pub const BIRTHDAY_COPY_CONSTANT: f64 = 3.0;
/// Query multiplier for the Grover test: `c₃·√(N/w)` queries.
pub const GROVER_QUERY_CONSTANT: f64 = 1.125;

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn check_pair(n: usize, w: usize) -> Result<()> {
    if w == 0 || 2 * w > n {
        return Err(Error::Precondition(format!(
            "need 1 ≤ w and 2w ≤ N, got w = {w}, N = {n}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverReport {
    pub success: f64,
    /// Grover iterations per run; each run also spends one query checking
    /// the measured element.
    pub iterations: usize,
    pub runs: usize,
    pub queries_used: usize,
    /// Probability that one run finds a member, for `|S| = w` and `2w`.
    pub hit_w: f64,
    pub hit_2w: f64,
}

/// Grover iterations with `(2j+1)θ_{2w} ≈ π`, so that a run almost never
/// finds a member of a `2w`-set while a `w`-set is found with constant
/// probability.
pub fn grover_iterations(n: usize, w: usize) -> usize {
    let theta = ((2 * w) as f64 / n as f64).sqrt().asin();
    (std::f64::consts::PI / (2.0 * theta) - 0.5)
        .round()
        .max(0.0) as usize
}

fn grover_state(n: usize, members: &[bool], iterations: usize) -> Vec<f64> {
    let mut psi = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..iterations {
        for (a, &m) in psi.iter_mut().zip(members) {
            if m {
                *a = -*a;
            }
        }
        let mean = psi.iter().sum::<f64>() / n as f64;
        for a in psi.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    psi
}

fn random_members(n: usize, k: usize, rng: &mut impl Rng) -> Vec<bool> {
    let mut members = vec![false; n];
    for i in sample(rng, n, k) {
        members[i] = true;
    }
    members
}

fn hit_probability(n: usize, k: usize, iterations: usize) -> f64 {
    let members: Vec<bool> = (0..n).map(|i| i < k).collect();
    grover_state(n, &members, iterations)
        .iter()
        .zip(&members)
        .filter(|(_, &m)| m)
        .map(|(a, _)| a * a)
        .sum()
}

/// Fixed schedule: as many identical runs as the budget allows, each run
/// measuring and checking one element; the decision is the likelihood-ratio
/// vote on the number of hits.
pub fn grover_distinguisher(
    n: usize,
    w: usize,
    query_budget: usize,
    trials: usize,
    seed: u64,
) -> Result<GroverReport> {
    check_pair(n, w)?;
    if !n.is_power_of_two() || n > GROVER_MAX_N {
        return Err(Error::Budget {
            what: "Grover statevector N (power of two)",
            needed: n as u128,
            budget: GROVER_MAX_N as u128,
        });
    }
    let j = grover_iterations(n, w);
    let runs = query_budget / (j + 1);
    let (p1, p2) = (hit_probability(n, w, j), hit_probability(n, 2 * w, j));
    let (l_hit, l_miss) = ((p1 / p2).ln(), ((1.0 - p1) / (1.0 - p2)).ln());
    let correct: usize = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let big = rng.random_bool(0.5);
            let k = if big { 2 * w } else { w };
            let members = random_members(n, k, &mut rng);
            let psi = grover_state(n, &members, j);
            let probs: Vec<f64> = psi.iter().map(|a| a * a).collect();
            let dist = rand::distr::weighted::WeightedIndex::new(&probs).expect("nonzero state");
            let hits = (0..runs).filter(|_| members[rng.sample(&dist)]).count();
            let score = hits as f64 * l_hit + (runs - hits) as f64 * l_miss;
            let guess_big = if score == 0.0 {
                rng.random_bool(0.5)
            } else {
                score < 0.0
            };
            usize::from(guess_big == big)
        })
        .sum();
    Ok(GroverReport {
        success: correct as f64 / trials.max(1) as f64,
        iterations: j,
        runs,
        queries_used: runs * (j + 1),
        hit_w: p1,
        hit_2w: p2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirthdayReport {
    pub success: f64,
    /// Collision counts at or above this value are read as `|S| = w`.
    pub threshold: Rational,
    pub expected_w: Rational,
    pub expected_2w: Rational,
}

/// Samples `copies` uniform members of a hidden `S` and reads `|S| = w` when
/// the number of colliding pairs reaches the midpoint of the two expected
/// counts `C(copies, 2)/w` and `C(copies, 2)/(2w)`.
pub fn birthday_distinguisher(
    w: usize,
    copies: usize,
    trials: usize,
    seed: u64,
) -> Result<BirthdayReport> {
    if copies < 2 {
        return Err(Error::Precondition("need at least 2 copies".into()));
    }
    if w == 0 {
        return Err(Error::Precondition("w must be positive".into()));
    }
    let pairs = (copies * (copies - 1) / 2) as i64;
    let expected_w = rat(pairs, w as i64);
    let expected_2w = rat(pairs, 2 * w as i64);
    let threshold = (&expected_w + &expected_2w) / Rational::from_integer(2.into());
    let correct: usize = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let big = rng.random_bool(0.5);
            let k = if big { 2 * w } else { w };
            let mut counts: HashMap<usize, i64> = HashMap::new();
            for _ in 0..copies {
                *counts.entry(rng.random_range(0..k)).or_default() += 1;
            }
            let collisions: i64 = counts.values().map(|c| c * (c - 1) / 2).sum();
            let guess_small = Rational::from_integer(collisions.into()) >= threshold;
            usize::from(guess_small != big)
        })
        .sum();
    Ok(BirthdayReport {
        success: correct as f64 / trials.max(1) as f64,
        threshold,
        expected_w,
        expected_2w,
    })
}

fn binomial_pmf(m: usize, p: &Rational) -> Vec<Rational> {
    let q = Rational::one() - p;
    (0..=m)
        .map(|h| {
            Rational::from_integer(binomial(m as i64, h as i64))
                * num_traits::pow(p.clone(), h)
                * num_traits::pow(q.clone(), m - h)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub success: Rational,
    /// Hit counts at or above this value are read as `|S| = 2w`.
    pub threshold: usize,
}

/// Exact best-threshold success for `Bin(copies, w/N)` against
/// `Bin(copies, 2w/N)` with equal priors.
pub fn projection_distinguisher(n: usize, w: usize, copies: usize) -> Result<ProjectionReport> {
    check_pair(n, w)?;
    let a = binomial_pmf(copies, &rat(w as i64, n as i64));
    let b = binomial_pmf(copies, &rat(2 * w as i64, n as i64));
    // success(τ) = 1/2 + (P_b[X ≥ τ] - P_a[X ≥ τ]) / 2
    let mut best = (Rational::zero(), 0usize);
    let mut diff = Rational::zero();
    for tau in (1..=copies).rev() {
        diff += &b[tau] - &a[tau];
        if diff > best.0 {
            best = (diff.clone(), tau);
        }
    }
    let half = Rational::new(BigInt::one(), 2.into());
    debug_assert!(!best.0.is_negative());
    Ok(ProjectionReport {
        success: &half + best.0 * &half,
        threshold: best.1,
    })
}
