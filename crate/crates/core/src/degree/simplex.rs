//! Dense two-phase revised simplex for small standard-form programs
//! `min cᵀy  s.t.  A y = b, y ≥ 0`.
//!
//! The basis matrix is refactorized every iteration, which is cheap for the
//! few dozen rows these programs have and keeps round-off from piling up.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SimplexSolution {
    pub objective: f64,
    /// Primal values for the original columns.
    pub y: Vec<f64>,
    /// Column indices in the final basis; artificial columns are `≥ n`.
    pub basis: Vec<usize>,
    /// Simplex multipliers, `Bᵀπ = c_B`.
    pub duals: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

const PIVOT_TOL: f64 = 1e-9;
const DEGENERATE_SWITCH: usize = 50;

struct Tableau<'a> {
    a: &'a DMatrix<f64>,
    m: usize,
    n: usize,
}

impl Tableau<'_> {
    fn column(&self, j: usize) -> DVector<f64> {
        if j < self.n {
            self.a.column(j).into_owned()
        } else {
            let mut e = DVector::zeros(self.m);
            e[j - self.n] = 1.0;
            e
        }
    }

    fn basis_matrix(&self, basis: &[usize]) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.m, self.m);
        for (k, &j) in basis.iter().enumerate() {
            b.set_column(k, &self.column(j));
        }
        b
    }
}

/// Solves `min cᵀy, A y = b, y ≥ 0`.
pub fn solve(
    a: &DMatrix<f64>,
    b: &[f64],
    c: &[f64],
) -> Result<(SimplexStatus, Option<SimplexSolution>)> {
    let (m, n) = a.shape();
    if b.len() != m || c.len() != n {
        return Err(Error::Dimension(format!(
            "A is {m}x{n}, b has {}, c has {}",
            b.len(),
            c.len()
        )));
    }
    // Flip rows so the right-hand side is nonnegative.
    let mut a = a.clone();
    let mut rhs = DVector::from_column_slice(b);
    let mut flipped = vec![false; m];
    for i in 0..m {
        if rhs[i] < 0.0 {
            rhs[i] = -rhs[i];
            a.row_mut(i).neg_mut();
            flipped[i] = true;
        }
    }
    let t = Tableau { a: &a, m, n };
    let mut basis: Vec<usize> = (n..n + m).collect();

    let phase1_cost = |j: usize| if j >= n { 1.0 } else { 0.0 };
    let status = iterate(&t, &rhs, &mut basis, &phase1_cost, true)?;
    debug_assert_eq!(status, SimplexStatus::Optimal);
    let x_b = basic_values(&t, &basis, &rhs)?;
    let infeas: f64 = basis
        .iter()
        .zip(x_b.iter())
        .filter(|(&j, _)| j >= n)
        .map(|(_, v)| v.abs())
        .sum();
    let scale = 1.0 + rhs.amax();
    if infeas > 1e-8 * scale {
        return Ok((SimplexStatus::Infeasible, None));
    }
    drive_out_artificials(&t, &mut basis)?;

    let phase2_cost = |j: usize| if j >= n { 0.0 } else { c[j] };
    let status = iterate(&t, &rhs, &mut basis, &phase2_cost, false)?;
    if status == SimplexStatus::Unbounded {
        return Ok((status, None));
    }
    let x_b = basic_values(&t, &basis, &rhs)?;
    let mut y = vec![0.0; n];
    for (k, &j) in basis.iter().enumerate() {
        if j < n {
            y[j] = x_b[k].max(0.0);
        }
    }
    let c_b = DVector::from_iterator(m, basis.iter().map(|&j| phase2_cost(j)));
    let bt = t.basis_matrix(&basis).transpose();
    let mut duals: Vec<f64> = bt
        .lu()
        .solve(&c_b)
        .ok_or_else(|| Error::Solver("singular basis at optimum".into()))?
        .iter()
        .copied()
        .collect();
    for (i, f) in flipped.iter().enumerate() {
        if *f {
            duals[i] = -duals[i];
        }
    }
    let objective = y.iter().zip(c).map(|(v, ci)| v * ci).sum();
    Ok((
        SimplexStatus::Optimal,
        Some(SimplexSolution {
            objective,
            y,
            basis,
            duals,
        }),
    ))
}

fn basic_values(t: &Tableau, basis: &[usize], rhs: &DVector<f64>) -> Result<DVector<f64>> {
    t.basis_matrix(basis)
        .lu()
        .solve(rhs)
        .ok_or_else(|| Error::Solver("singular basis".into()))
}

fn iterate(
    t: &Tableau,
    rhs: &DVector<f64>,
    basis: &mut [usize],
    cost: &dyn Fn(usize) -> f64,
    allow_artificial: bool,
) -> Result<SimplexStatus> {
    let (m, n) = (t.m, t.n);
    let max_iter = 50 * (m + n) + 1000;
    let cmax = (0..n + m).map(|j| cost(j).abs()).fold(1.0, f64::max);
    let mut degenerate_run = 0usize;
    let mut in_basis = vec![false; n + m];
    for &j in basis.iter() {
        in_basis[j] = true;
    }
    for _ in 0..max_iter {
        let bmat = t.basis_matrix(basis);
        let lu = bmat.clone().lu();
        let x_b = lu
            .solve(rhs)
            .ok_or_else(|| Error::Solver("singular basis".into()))?;
        let c_b = DVector::from_iterator(m, basis.iter().map(|&j| cost(j)));
        let pi = bmat
            .transpose()
            .lu()
            .solve(&c_b)
            .ok_or_else(|| Error::Solver("singular basis transpose".into()))?;

        let bland = degenerate_run >= DEGENERATE_SWITCH;
        let tol = 1e-10 * cmax;
        let mut entering: Option<(usize, f64)> = None;
        let limit = if allow_artificial { n + m } else { n };
        for j in 0..limit {
            if in_basis[j] {
                continue;
            }
            let r = cost(j) - reduced_dot(t, &pi, j);
            if r < -tol {
                match entering {
                    None => entering = Some((j, r)),
                    Some((_, best)) if !bland && r < best => entering = Some((j, r)),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
        }
        let Some((q, _)) = entering else {
            return Ok(SimplexStatus::Optimal);
        };
        let d = lu
            .solve(&t.column(q))
            .ok_or_else(|| Error::Solver("singular basis".into()))?;
        let mut leave: Option<(usize, f64, f64)> = None;
        for i in 0..m {
            if d[i] > PIVOT_TOL {
                let ratio = x_b[i].max(0.0) / d[i];
                match leave {
                    None => leave = Some((i, ratio, d[i])),
                    Some((li, lr, ld)) => {
                        let tie = (ratio - lr).abs() <= 1e-12 * (1.0 + lr.abs());
                        let better = if tie {
                            if bland {
                                basis[i] < basis[li]
                            } else {
                                d[i] > ld
                            }
                        } else {
                            ratio < lr
                        };
                        if better {
                            leave = Some((i, ratio, d[i]));
                        }
                    }
                }
            }
        }
        let Some((r, ratio, _)) = leave else {
            return Ok(SimplexStatus::Unbounded);
        };
        if ratio <= 1e-12 {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        in_basis[basis[r]] = false;
        in_basis[q] = true;
        basis[r] = q;
    }
    Err(Error::Solver(format!(
        "no convergence in {max_iter} iterations"
    )))
}

fn reduced_dot(t: &Tableau, pi: &DVector<f64>, j: usize) -> f64 {
    if j < t.n {
        t.a.column(j).dot(pi)
    } else {
        pi[j - t.n]
    }
}

fn drive_out_artificials(t: &Tableau, basis: &mut [usize]) -> Result<()> {
    let n = t.n;
    for r in 0..t.m {
        if basis[r] < n {
            continue;
        }
        let lu = t.basis_matrix(basis).lu();
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let d = lu
                .solve(&t.column(j))
                .ok_or_else(|| Error::Solver("singular basis".into()))?;
            let v = d[r].abs();
            if v > 1e-7 && best.is_none_or(|(_, b)| v > b) {
                best = Some((j, v));
            }
        }
        if let Some((j, _)) = best {
            basis[r] = j;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_program() {
        // min -x1 - x2, x1 + 2x2 + s1 = 4, 3x1 + x2 + s2 = 6.
        let a = DMatrix::from_row_slice(2, 4, &[1.0, 2.0, 1.0, 0.0, 3.0, 1.0, 0.0, 1.0]);
        let (status, sol) = solve(&a, &[4.0, 6.0], &[-1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(status, SimplexStatus::Optimal);
        let sol = sol.unwrap();
        assert!((sol.objective + 2.8).abs() < 1e-12);
        assert!((sol.y[0] - 1.6).abs() < 1e-12 && (sol.y[1] - 1.2).abs() < 1e-12);
        // Strong duality.
        assert!((sol.duals[0] * 4.0 + sol.duals[1] * 6.0 - sol.objective).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let (status, _) = solve(&a, &[-1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(status, SimplexStatus::Infeasible);
        let a = DMatrix::from_row_slice(1, 2, &[1.0, -1.0]);
        let (status, _) = solve(&a, &[1.0], &[0.0, -1.0]).unwrap();
        assert_eq!(status, SimplexStatus::Unbounded);
    }
}
