use num_integer::Roots;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::outward::sqrt_up;
use crate::bounds::BOUND_PRECISION_BITS;
use crate::error::{Error, Result};
use crate::poly::{int, rat, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

/// Lower bounds on the five quantities tracked for one side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantities {
    pub g: Rational,
    pub delta: Rational,
    pub h: Rational,
    pub i: Rational,
    pub l: Rational,
}

impl Quantities {
    fn max(&self) -> &Rational {
        [&self.g, &self.delta, &self.h, &self.i, &self.l]
            .into_iter()
            .max()
            .expect("five values")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplosionState {
    /// Side whose chain produced this state.
    pub side: Side,
    pub round: usize,
    pub u: Quantities,
    pub v: Quantities,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplosionParams {
    pub n: u64,
    pub w: u64,
    pub deg_u: usize,
    pub deg_v: usize,
    pub seed_side: Side,
    /// Initial lower bound on `G` of the seed side.
    pub seed: Rational,
    pub max_rounds: usize,
    pub blowup_threshold: Rational,
}

impl ExplosionParams {
    /// Seed `G ≥ 1/6`, 50 rounds, threshold `10^9`.
    pub fn new(n: u64, w: u64, deg_u: usize, deg_v: usize, seed_side: Side) -> Self {
        ExplosionParams {
            n,
            w,
            deg_u,
            deg_v,
            seed_side,
            seed: rat(1, 6),
            max_rounds: 50,
            blowup_threshold: int(1_000_000_000),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplosionRun {
    pub diverged: bool,
    /// Set when a degree-zero side acquired a positive `Δ`: a constant has
    /// no spread, so the chain has no solution at that point.
    pub constant_side: Option<Side>,
    pub trace: Vec<ExplosionState>,
}

/// Rational upper bound on `√w`, exact for perfect squares.
fn sqrt_w_up(w: u64) -> Rational {
    let s = w.sqrt();
    if s * s == w {
        int(s as i64)
    } else {
        sqrt_up(&int(w as i64), BOUND_PRECISION_BITS)
    }
}

fn max_assign(slot: &mut Rational, v: Rational) {
    if v > *slot {
        *slot = v;
    }
}

/// Iterates the two inequality chains as lower-bound updates, one side per
/// round:
///
/// ```text
/// Δ_u ≥ G_u/(2w)   H_u ≥ Δ_u(N - √w)/deg(u)²   I_u ≥ H_u/2   L_u ≥ I_u/2   G_v ≥ L_u - 1
/// Δ_v ≥ G_v·w      H_v ≥ Δ_v(1/√w - 1/N)/deg(v)²   I_v ≥ H_v/2   L_v ≥ I_v/2   G_u ≥ L_v - 1
/// ```
///
/// The factors involving `√w` are rounded down so every update stays a valid
/// lower bound.
pub fn explosion_iterate(p: &ExplosionParams) -> Result<ExplosionRun> {
    if p.w < 4 || 2 * p.w > p.n {
        return Err(Error::Precondition(format!(
            "need 4 ≤ w and 2w ≤ N, got w = {}, N = {}",
            p.w, p.n
        )));
    }
    if p.seed < Rational::zero() {
        return Err(Error::Precondition("seed must be nonnegative".into()));
    }
    let n = int(p.n as i64);
    let w = int(p.w as i64);
    let sw = sqrt_w_up(p.w);
    let factor = |num: Rational, deg: usize| num / int((deg * deg) as i64);
    let a_u = (p.deg_u > 0).then(|| factor(&n - &sw, p.deg_u));
    let a_v = (p.deg_v > 0).then(|| factor(sw.recip() - n.recip(), p.deg_v));

    let mut u = Quantities::default();
    let mut v = Quantities::default();
    match p.seed_side {
        Side::U => u.g = p.seed.clone(),
        Side::V => v.g = p.seed.clone(),
    }
    let half = Rational::new(1.into(), 2.into());
    let mut side = p.seed_side;
    let mut trace = Vec::with_capacity(p.max_rounds);
    for round in 1..=p.max_rounds {
        let (this, that, a) = match side {
            Side::U => (&mut u, &mut v, &a_u),
            Side::V => (&mut v, &mut u, &a_v),
        };
        let delta = match side {
            Side::U => &this.g / (int(2) * &w),
            Side::V => &this.g * &w,
        };
        max_assign(&mut this.delta, delta);
        let constant = a.is_none() && this.delta > Rational::zero();
        if let Some(a) = a {
            max_assign(&mut this.h, &this.delta * a);
            max_assign(&mut this.i, &this.h * &half);
            max_assign(&mut this.l, &this.i * &half);
            max_assign(&mut that.g, &this.l - Rational::one());
        }
        trace.push(ExplosionState {
            side,
            round,
            u: u.clone(),
            v: v.clone(),
        });
        if constant {
            return Ok(ExplosionRun {
                diverged: true,
                constant_side: Some(side),
                trace,
            });
        }
        if u.max() > &p.blowup_threshold || v.max() > &p.blowup_threshold {
            return Ok(ExplosionRun {
                diverged: true,
                constant_side: None,
                trace,
            });
        }
        side = side.other();
    }
    Ok(ExplosionRun {
        diverged: false,
        constant_side: None,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplosionCell {
    pub deg_u: usize,
    pub deg_v: usize,
    pub diverged: bool,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplosionGrid {
    pub n: u64,
    pub w: u64,
    pub du_cap: usize,
    pub dv_cap: usize,
    /// Degrees run over `1..=cap`, row-major in `deg_u`.
    pub cells: Vec<ExplosionCell>,
    /// For each `deg_u`, the largest diverging `deg_v`.
    pub boundary: Vec<(usize, Option<usize>)>,
    /// Boundary `deg_v` at `deg_u = 1`, divided by `w^{1/4}`.
    pub v_boundary_constant: Option<f64>,
}

impl ExplosionGrid {
    pub fn diverged(&self, deg_u: usize, deg_v: usize) -> bool {
        self.cells[(deg_u - 1) * self.dv_cap + deg_v - 1].diverged
    }

    /// Divergence never appears when either degree grows.
    pub fn is_antitone(&self) -> bool {
        (1..=self.du_cap).all(|du| {
            (1..=self.dv_cap).all(|dv| {
                self.diverged(du, dv)
                    || ((du == self.du_cap || !self.diverged(du + 1, dv))
                        && (dv == self.dv_cap || !self.diverged(du, dv + 1)))
            })
        })
    }
}

pub fn explosion_region_scan(
    n: u64,
    w: u64,
    du_cap: usize,
    dv_cap: usize,
    seed_side: Side,
    max_rounds: usize,
    blowup_threshold: &Rational,
) -> Result<ExplosionGrid> {
    if du_cap == 0 || dv_cap == 0 {
        return Err(Error::Precondition("degree caps must be at least 1".into()));
    }
    let coords: Vec<(usize, usize)> = (1..=du_cap)
        .flat_map(|du| (1..=dv_cap).map(move |dv| (du, dv)))
        .collect();
    let cells = coords
        .par_iter()
        .map(|&(du, dv)| {
            let mut p = ExplosionParams::new(n, w, du, dv, seed_side);
            p.max_rounds = max_rounds;
            p.blowup_threshold = blowup_threshold.clone();
            let run = explosion_iterate(&p)?;
            Ok(ExplosionCell {
                deg_u: du,
                deg_v: dv,
                diverged: run.diverged,
                rounds: run.trace.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut grid = ExplosionGrid {
        n,
        w,
        du_cap,
        dv_cap,
        cells,
        boundary: Vec::new(),
        v_boundary_constant: None,
    };
    grid.boundary = (1..=du_cap)
        .map(|du| (du, (1..=dv_cap).rev().find(|&dv| grid.diverged(du, dv))))
        .collect();
    grid.v_boundary_constant = grid.boundary[0]
        .1
        .map(|dv| dv as f64 / to_f64(&int(w as i64)).powf(0.25));
    Ok(grid)
}
