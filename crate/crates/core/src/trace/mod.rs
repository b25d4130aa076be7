//! Trace distance between the `k`-copy ensembles
//! `ρ_{L,w,k} = E_{|S| = w}[(|S⟩⟨S|)^{⊗k}]` and `ρ_{L,2w,k}`.
//!
//! The value is the maximum distinguishing bias, half the sum of the absolute
//! eigenvalues of the difference. Two routes compute it: a dense signed-Gram
//! eigensolve over all subsets, and a reduction over the irreducible
//! components of the permutation action on `[L]`, which needs at most a 2×2
//! block per component.

mod gram;
mod johnson;
mod radical;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gram::{dense_difference_spectrum, signed_gram, BRUTE_FORCE_BUDGET, DENSE_MAX_DIM};
pub use johnson::SYMMETRIC_MAX_L;
pub use radical::{gram_entry, RadicalScalar};
pub use search::{bias_scan, default_threshold, min_copies_for_bias, BiasRow, MinCopies, WRule};

/// Tolerance on the brute-force against symmetry-reduced comparison.
pub const AGREEMENT_TOL: f64 = 1e-9;
/// Eigenvalues below this magnitude are not counted as nonzero.
pub const ZERO_EIGEN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub l: u64,
    pub w: u64,
    pub k: u32,
}

impl EnsembleSpec {
    pub fn new(l: u64, w: u64, k: u32) -> Result<Self> {
        if w == 0 || 2 * w > l {
            return Err(Error::Precondition(format!(
                "need 1 ≤ w and 2w ≤ L, got w = {w}, L = {l}"
            )));
        }
        Ok(EnsembleSpec { l, w, k })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TraceMethod {
    BruteForce,
    SymmetryReduced,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSummary {
    pub min: f64,
    pub max: f64,
    /// Eigenvalues of magnitude above [`ZERO_EIGEN_TOL`], with multiplicity.
    pub nonzero: u128,
    /// Signed sum, the trace of the difference.
    pub signed_sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDistanceResult {
    pub value: f64,
    pub method: TraceMethod,
    pub eigen_summary: EigenSummary,
}

/// Trace distance between the size-`w1` and size-`w2` ensembles on `[L]`.
pub fn trace_distance_between(
    l: u64,
    w1: u64,
    w2: u64,
    k: u32,
    method: TraceMethod,
) -> Result<TraceDistanceResult> {
    if w1 == 0 || w2 == 0 || w1 > l || w2 > l {
        return Err(Error::Precondition(format!(
            "set sizes {w1}, {w2} must lie in [1, {l}]"
        )));
    }
    match method {
        TraceMethod::BruteForce => gram::bruteforce(l, w1, w2, k),
        TraceMethod::SymmetryReduced => johnson::symmetric(l, w1, w2, k),
    }
}

pub fn trace_distance_bruteforce(spec: &EnsembleSpec) -> Result<TraceDistanceResult> {
    trace_distance_between(spec.l, spec.w, 2 * spec.w, spec.k, TraceMethod::BruteForce)
}

pub fn trace_distance_symmetric(spec: &EnsembleSpec) -> Result<TraceDistanceResult> {
    trace_distance_between(
        spec.l,
        spec.w,
        2 * spec.w,
        spec.k,
        TraceMethod::SymmetryReduced,
    )
}

/// Whether the dense route fits its budget.
pub fn bruteforce_fits(spec: &EnsembleSpec) -> bool {
    gram::ensemble_size(spec.l, spec.w, 2 * spec.w) <= BRUTE_FORCE_BUDGET as u128
}

/// Symmetry-reduced value when `L` allows it, else brute force.
pub fn trace_distance(spec: &EnsembleSpec) -> Result<TraceDistanceResult> {
    if spec.l <= SYMMETRIC_MAX_L {
        trace_distance_symmetric(spec)
    } else {
        trace_distance_bruteforce(spec)
    }
}

/// [`trace_distance`] plus the brute-force difference when both routes run.
/// Disagreement above [`AGREEMENT_TOL`] is an error.
pub fn trace_distance_checked(spec: &EnsembleSpec) -> Result<(TraceDistanceResult, Option<f64>)> {
    let main = trace_distance(spec)?;
    if main.method == TraceMethod::BruteForce || !bruteforce_fits(spec) {
        return Ok((main, None));
    }
    let brute = trace_distance_bruteforce(spec)?;
    let diff = (main.value - brute.value).abs();
    if diff > AGREEMENT_TOL {
        return Err(Error::Reduction(format!(
            "L = {}, w = {}, k = {}: symmetric {} vs brute force {}",
            spec.l, spec.w, spec.k, main.value, brute.value
        )));
    }
    Ok((main, Some(diff)))
}
