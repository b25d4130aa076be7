use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::state::{prepare_subset_state, subsets, OracleSet};
use crate::error::{Error, Result};

/// Largest `N` for exact subset enumeration.
pub const CURVE_MAX_N: usize = 12;
/// Largest total state dimension the simulator will allocate unitaries for.
pub const SIM_MAX_DIM: usize = 4096;
pub const UNITARITY_TOL: f64 = 1e-12;

/// How a simulated algorithm is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgorithmKind {
    /// One copy, projected onto the uniform state over `[N]`.
    Projection,
    /// Two copies measured in the standard basis, accept on equal outcomes.
    Collision,
    /// Haar-random unitaries and a random half of the basis as accepting set.
    Random { seed: u64 },
}

/// `R` copies of `|S⟩`, `T` phase queries on a dedicated query register, and
/// an ancilla. Register order, most significant first: copies, query
/// register (present when `T > 0`), ancilla.
#[derive(Clone, Debug)]
pub struct AlgorithmSpec {
    pub n: usize,
    pub copies: usize,
    pub queries: usize,
    pub ancilla_dim: usize,
    /// `U_0 … U_T` on the full space.
    pub unitaries: Vec<DMatrix<Complex64>>,
    /// Accepting standard-basis outcomes of the full space.
    pub accept: Vec<bool>,
    pub kind: AlgorithmKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub acceptance_probability: f64,
    pub final_norm_error: f64,
}

fn dimension(n: usize, copies: usize, queries: usize, ancilla: usize) -> Result<usize> {
    let mut d: usize = 1;
    for _ in 0..copies {
        d = d.saturating_mul(n);
    }
    if queries > 0 {
        d = d.saturating_mul(n);
    }
    d = d.saturating_mul(ancilla);
    if d > SIM_MAX_DIM {
        return Err(Error::Budget {
            what: "state dimension",
            needed: d as u128,
            budget: SIM_MAX_DIM as u128,
        });
    }
    Ok(d)
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn unitarity_error(u: &DMatrix<Complex64>) -> f64 {
    let id = DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
    (u.adjoint() * u - id)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

impl AlgorithmSpec {
    pub fn dimension(&self) -> usize {
        self.accept.len()
    }

    pub fn projection(n: usize) -> Result<Self> {
        let d = dimension(n, 1, 0, 1)?;
        let scale = 1.0 / (n as f64).sqrt();
        // Inverse DFT sends the uniform state to |0⟩.
        let f = DMatrix::from_fn(n, n, |j, k| {
            let angle = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
            Complex64::from_polar(scale, angle)
        });
        let accept = (0..d).map(|i| i == 0).collect();
        Ok(AlgorithmSpec {
            n,
            copies: 1,
            queries: 0,
            ancilla_dim: 1,
            unitaries: vec![f],
            accept,
            kind: AlgorithmKind::Projection,
        })
    }

    pub fn collision(n: usize) -> Result<Self> {
        let d = dimension(n, 2, 0, 1)?;
        let accept = (0..d).map(|i| i / n == i % n).collect();
        Ok(AlgorithmSpec {
            n,
            copies: 2,
            queries: 0,
            ancilla_dim: 1,
            unitaries: vec![DMatrix::identity(d, d)],
            accept,
            kind: AlgorithmKind::Collision,
        })
    }

    pub fn random(
        n: usize,
        copies: usize,
        queries: usize,
        ancilla_dim: usize,
        seed: u64,
    ) -> Result<Self> {
        if ancilla_dim == 0 {
            return Err(Error::Precondition(
                "ancilla dimension must be at least 1".into(),
            ));
        }
        let d = dimension(n, copies, queries, ancilla_dim)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unitaries = (0..=queries).map(|_| random_unitary(d, &mut rng)).collect();
        let accept = (0..d).map(|_| rng.random_bool(0.5)).collect();
        Ok(AlgorithmSpec {
            n,
            copies,
            queries,
            ancilla_dim,
            unitaries,
            accept,
            kind: AlgorithmKind::Random { seed },
        })
    }

    pub fn from_kind(
        kind: &AlgorithmKind,
        n: usize,
        copies: usize,
        queries: usize,
    ) -> Result<Self> {
        match kind {
            AlgorithmKind::Projection => Self::projection(n),
            AlgorithmKind::Collision => Self::collision(n),
            AlgorithmKind::Random { seed } => Self::random(n, copies, queries, 1, *seed),
        }
    }

    pub fn max_unitarity_error(&self) -> f64 {
        self.unitaries
            .iter()
            .map(unitarity_error)
            .fold(0.0, f64::max)
    }

    /// Exponent window `[-R, 2T + R]` of the acceptance curve.
    pub fn exponent_window(&self) -> (i64, i64) {
        (
            -(self.copies as i64),
            (2 * self.queries + self.copies) as i64,
        )
    }
}

/// Applies `U_0`, then alternates phase queries `(-1)^{x_i}` on the query
/// register with `U_1 … U_T`, and returns the accepting probability.
pub fn run_algorithm(alg: &AlgorithmSpec, s: &OracleSet) -> Result<SimResult> {
    if s.n() != alg.n {
        return Err(Error::Dimension(format!(
            "algorithm is for N = {}, set has N = {}",
            alg.n,
            s.n()
        )));
    }
    let copies = prepare_subset_state(s, alg.copies);
    let tail = alg.dimension() / copies.len();
    let mut psi = DVector::<Complex64>::zeros(alg.dimension());
    for (i, a) in copies.iter().enumerate() {
        psi[i * tail] = *a;
    }
    psi = &alg.unitaries[0] * psi;
    for u in &alg.unitaries[1..] {
        for (i, z) in psi.iter_mut().enumerate() {
            if s.contains((i / alg.ancilla_dim) % alg.n) {
                *z = -*z;
            }
        }
        psi = u * psi;
    }
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    let p: f64 = psi
        .iter()
        .zip(&alg.accept)
        .filter(|(_, &a)| a)
        .map(|(z, _)| z.norm_sqr())
        .sum();
    Ok(SimResult {
        acceptance_probability: p.clamp(0.0, 1.0),
        final_norm_error: (norm2 - 1.0).abs(),
    })
}

/// `E_{|S| = k}` of the acceptance probability, over every `k`-subset.
pub fn acceptance_curve(alg: &AlgorithmSpec, k: usize) -> Result<f64> {
    if alg.n > CURVE_MAX_N {
        return Err(Error::Budget {
            what: "subset enumeration N",
            needed: alg.n as u128,
            budget: CURVE_MAX_N as u128,
        });
    }
    if k == 0 || k > alg.n {
        return Err(Error::Precondition(format!("need 1 ≤ k ≤ N, got k = {k}")));
    }
    let sets = subsets(alg.n, k);
    let total: f64 = sets
        .par_iter()
        .map(|e| -> Result<f64> {
            let s = OracleSet::from_indices(alg.n, e)?;
            Ok(run_algorithm(alg, &s)?.acceptance_probability)
        })
        .collect::<Result<Vec<_>>>()?
        .iter()
        .sum();
    Ok(total / sets.len() as f64)
}

/// `(k, q(k))` for `k = 1..=N`.
pub fn full_curve(alg: &AlgorithmSpec) -> Result<Vec<(u64, f64)>> {
    (1..=alg.n)
        .map(|k| Ok((k as u64, acceptance_curve(alg, k)?)))
        .collect()
}
