use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lp::{solve_certified, DegreeCertificate, LpConstraint, LpFamily, LpInstance};
use crate::error::{Error, Result};
use crate::poly::{int, rat, Rational};

/// Constraints on `q(k) = u(k) + v(1/k)`: `0 ≤ q(k) ≤ 1` for `k ∈ [N]`,
/// `q(w) ≤ 1/3` and `q(2w) ≥ 2/3`.
pub fn laurent_instance(n: usize, w: usize, deg_u: usize, deg_v: usize) -> Result<LpInstance> {
    if w < 1 || 2 * w > n {
        return Err(Error::Precondition(format!(
            "need 1 ≤ w and 2w ≤ N, got w = {w}, N = {n}"
        )));
    }
    let mut constraints = Vec::with_capacity(2 * n + 2);
    for k in 1..=n as i64 {
        constraints.push(LpConstraint::le(int(k), int(1)));
        constraints.push(LpConstraint::ge(int(k), int(0)));
    }
    constraints.push(LpConstraint::le(int(w as i64), rat(1, 3)));
    constraints.push(LpConstraint::ge(int(2 * w as i64), rat(2, 3)));
    Ok(LpInstance {
        family: LpFamily::Laurent { deg_u, deg_v },
        constraints,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierCell {
    pub deg_u: usize,
    pub deg_v: usize,
    pub feasible: bool,
    /// Witness slack or contradiction margin.
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierGrid {
    pub n: usize,
    pub w: usize,
    pub du_cap: usize,
    pub dv_cap: usize,
    /// Row-major over `deg_u`, then `deg_v`.
    pub cells: Vec<FrontierCell>,
}

impl FrontierGrid {
    pub fn feasible(&self, deg_u: usize, deg_v: usize) -> bool {
        self.cells[deg_u * (self.dv_cap + 1) + deg_v].feasible
    }

    /// For each `deg_v`, the least feasible `deg_u` (if any within the cap).
    pub fn frontier(&self) -> Vec<(usize, Option<usize>)> {
        (0..=self.dv_cap)
            .map(|dv| (dv, (0..=self.du_cap).find(|&du| self.feasible(du, dv))))
            .collect()
    }

    /// Feasibility never disappears when either degree grows.
    pub fn is_monotone(&self) -> bool {
        (0..=self.du_cap).all(|du| {
            (0..=self.dv_cap).all(|dv| {
                !self.feasible(du, dv)
                    || ((du == self.du_cap || self.feasible(du + 1, dv))
                        && (dv == self.dv_cap || self.feasible(du, dv + 1)))
            })
        })
    }
}

pub fn laurent_cell(n: usize, w: usize, deg_u: usize, deg_v: usize) -> Result<DegreeCertificate> {
    solve_certified(&laurent_instance(n, w, deg_u, deg_v)?)
}

/// Exact feasibility over the grid `deg_u ≤ du_cap`, `deg_v ≤ dv_cap`.
pub fn laurent_frontier_lp(
    n: usize,
    w: usize,
    du_cap: usize,
    dv_cap: usize,
) -> Result<FrontierGrid> {
    laurent_instance(n, w, 0, 0)?;
    let coords: Vec<(usize, usize)> = (0..=du_cap)
        .flat_map(|du| (0..=dv_cap).map(move |dv| (du, dv)))
        .collect();
    let cells = coords
        .par_iter()
        .map(|&(du, dv)| {
            let c = laurent_cell(n, w, du, dv)?;
            Ok(FrontierCell {
                deg_u: du,
                deg_v: dv,
                feasible: c.is_feasible(),
                margin: c.verification_margin,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrontierGrid {
        n,
        w,
        du_cap,
        dv_cap,
        cells,
    })
}
