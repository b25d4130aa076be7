use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use super::radical::gram_entry;
use super::{EigenSummary, TraceDistanceResult, TraceMethod, ZERO_EIGEN_TOL};
use crate::error::{Error, Result};
use crate::poly::binomial;
use crate::qsim::subsets;

/// Largest `C(L, w1) + C(L, w2)` for the dense eigensolve.
pub const BRUTE_FORCE_BUDGET: usize = 4000;
/// Largest `L^k` for [`dense_difference_spectrum`].
pub const DENSE_MAX_DIM: usize = 1024;

const MAX_SWEEPS_PER_ROW: usize = 1000;
const RANK_TOL_FACTOR: f64 = 4.0;

pub(crate) fn ensemble_size(l: u64, w1: u64, w2: u64) -> u128 {
    let c = |w: u64| binomial(l as i64, w as i64).try_into().unwrap_or(u128::MAX);
    c(w1).saturating_add(c(w2))
}

pub(crate) fn summarize(eigs: impl IntoIterator<Item = (f64, u128)>) -> EigenSummary {
    let mut s = EigenSummary {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        nonzero: 0,
        signed_sum: 0.0,
    };
    for (x, mult) in eigs {
        s.min = s.min.min(x);
        s.max = s.max.max(x);
        s.signed_sum += x * mult as f64;
        if x.abs() > ZERO_EIGEN_TOL {
            s.nonzero += mult;
        }
    }
    s
}

fn eigenvalues(m: DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    let n = m.nrows();
    SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS_PER_ROW * n.max(1))
        .ok_or_else(|| Error::Eigen(format!("no convergence on a {n}×{n} matrix")))
}

fn masks(l: u64, w: u64) -> Vec<u128> {
    subsets(l as usize, w as usize)
        .into_iter()
        .map(|s| s.into_iter().fold(0u128, |m, i| m | (1 << i)))
        .collect()
}

/// Ensemble vectors and their signed weights `+1/C(L, w1)`, `-1/C(L, w2)`,
/// together with the Gram matrix `⟨S|S'⟩^k`.
pub fn signed_gram(l: u64, w1: u64, w2: u64, k: u32) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let needed = ensemble_size(l, w1, w2);
    if needed > BRUTE_FORCE_BUDGET as u128 || l > 127 {
        return Err(Error::Budget {
            what: "signed Gram dimension C(L, w1) + C(L, w2)",
            needed,
            budget: BRUTE_FORCE_BUDGET as u128,
        });
    }
    let a = masks(l, w1);
    let b = masks(l, w2);
    let weights: Vec<f64> = std::iter::repeat_n(1.0 / a.len() as f64, a.len())
        .chain(std::iter::repeat_n(-1.0 / b.len() as f64, b.len()))
        .collect();
    let sets: Vec<u128> = a.into_iter().chain(b).collect();
    let mut cache: HashMap<(u64, u64, u64), f64> = HashMap::new();
    let n = sets.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let (si, sj) = (sets[i].count_ones() as u64, sets[j].count_ones() as u64);
            let t = (sets[i] & sets[j]).count_ones() as u64;
            let v = *cache
                .entry((si, sj, t))
                .or_insert_with(|| gram_entry(si, sj, t, k).to_f64());
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok((weights, g))
}

/// Spectrum of `Σ c_i |ψ_i⟩⟨ψ_i|` on the span of the `ψ_i`. With
/// `K = |C|^{1/2} G |C|^{1/2} = U Λ Uᵀ` and `J = sign(C)`, the operator is
/// similar to `Λ^{1/2} Uᵀ J U Λ^{1/2}` there.
pub(crate) fn bruteforce(l: u64, w1: u64, w2: u64, k: u32) -> Result<TraceDistanceResult> {
    let (c, g) = signed_gram(l, w1, w2, k)?;
    let n = c.len();
    let root: Vec<f64> = c.iter().map(|x| x.abs().sqrt()).collect();
    let kmat = DMatrix::from_fn(n, n, |i, j| root[i] * g[(i, j)] * root[j]);
    let eig = eigenvalues(kmat)?;
    // Numerical rank cutoff, as for a matrix rank: n · ε · λ_max.
    let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let cutoff = RANK_TOL_FACTOR * n as f64 * f64::EPSILON * lmax;
    let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > cutoff).collect();
    let r = keep.len();
    // F = U_r Λ_r^{1/2}; H = Fᵀ J F.
    let f = DMatrix::from_fn(n, r, |i, j| {
        let col = keep[j];
        eig.eigenvectors[(i, col)] * eig.eigenvalues[col].sqrt()
    });
    let mut jf = f.clone();
    for i in 0..n {
        if c[i] < 0.0 {
            jf.row_mut(i).neg_mut();
        }
    }
    let h = f.transpose() * jf;
    let h = (&h + h.transpose()) * 0.5;
    let spectrum = eigenvalues(h)?.eigenvalues;
    let value = 0.5 * spectrum.iter().map(|x| x.abs()).sum::<f64>();
    Ok(TraceDistanceResult {
        value,
        method: TraceMethod::BruteForce,
        eigen_summary: summarize(spectrum.iter().map(|&x| (x, 1))),
    })
}

/// All eigenvalues of `ρ_{L,w1,k} - ρ_{L,w2,k}` built densely in the
/// `L^k`-dimensional space. Only for tiny instances.
pub fn dense_difference_spectrum(l: u64, w1: u64, w2: u64, k: u32) -> Result<Vec<f64>> {
    let dim = (l as u128).checked_pow(k).unwrap_or(u128::MAX);
    if dim > DENSE_MAX_DIM as u128 {
        return Err(Error::Budget {
            what: "dense state dimension L^k",
            needed: dim,
            budget: DENSE_MAX_DIM as u128,
        });
    }
    let dim = dim as usize;
    let state = |w: u64| -> DMatrix<f64> {
        let sets = subsets(l as usize, w as usize);
        let mut rho = DMatrix::zeros(dim, dim);
        for s in &sets {
            let mut single = nalgebra::DVector::zeros(l as usize);
            for &i in s {
                single[i] = 1.0 / (w as f64).sqrt();
            }
            let mut v = nalgebra::DVector::from_element(1, 1.0);
            for _ in 0..k {
                v = v.kronecker(&single);
            }
            rho += &v * v.transpose();
        }
        rho / sets.len() as f64
    };
    let diff = state(w1) - state(w2);
    Ok(eigenvalues(diff)?.eigenvalues.iter().copied().collect())
}
