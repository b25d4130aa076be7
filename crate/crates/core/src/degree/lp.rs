//! Feasibility of pointwise linear constraints on a polynomial (or Laurent
//! polynomial) of bounded degree, decided in floating point and certified in
//! exact arithmetic.
//!
//! The float program runs in a basis that is orthonormal on the constraint
//! points (Vandermonde with Arnoldi), which stays well conditioned even for
//! clustered points such as `1/k`. Its optimum suggests `D + 2` active
//! constraints at distinct points with alternating sides; their
//! divided-difference weights give a dual combination, and the same set pins
//! down the levelled primal function by interpolation. Exact single-point
//! exchanges then run until one of the two checks out.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::simplex::{self, SimplexStatus};
use crate::error::{Error, Result};
use crate::poly::sturm::simplest_between;
use crate::poly::{from_f64, int, to_f64, LaurentPoly, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
}

/// `f(point) ≤ bound` or `f(point) ≥ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpConstraint {
    pub point: Rational,
    pub relation: Relation,
    pub bound: Rational,
}

impl LpConstraint {
    pub fn le(point: Rational, bound: Rational) -> Self {
        LpConstraint {
            point,
            relation: Relation::Le,
            bound,
        }
    }
    pub fn ge(point: Rational, bound: Rational) -> Self {
        LpConstraint {
            point,
            relation: Relation::Ge,
            bound,
        }
    }

    /// `(s, b)` with the constraint written as `s·f ≤ b`.
    fn signed(&self) -> (i8, Rational) {
        match self.relation {
            Relation::Le => (1, self.bound.clone()),
            Relation::Ge => (-1, -self.bound.clone()),
        }
    }
}

/// Function space the unknown ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpFamily {
    /// Polynomials of degree at most `degree` in the point coordinate.
    Polynomial { degree: usize },
    /// `u(k) + v(1/k)` with `deg u ≤ deg_u`, `deg v ≤ deg_v`; points must be
    /// positive.
    Laurent { deg_u: usize, deg_v: usize },
}

impl LpFamily {
    /// Dimension minus one; every member is `ω(ξ)·P(ξ)` with `deg P ≤ D`.
    pub fn dimension_degree(&self) -> usize {
        match *self {
            LpFamily::Polynomial { degree } => degree,
            LpFamily::Laurent { deg_u, deg_v } => deg_u + deg_v,
        }
    }

    fn shift(&self) -> usize {
        match *self {
            LpFamily::Polynomial { .. } => 0,
            LpFamily::Laurent { deg_v, .. } => deg_v,
        }
    }
}

/// A linear feasibility problem in the coefficients of a degree-bounded
/// function: every constraint is affine in the coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpInstance {
    pub family: LpFamily,
    pub constraints: Vec<LpConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// A polynomial meeting every constraint, in the monomial basis.
    FeasibleWitness(Polynomial),
    /// A Laurent polynomial meeting every constraint.
    FeasibleLaurent(LaurentPoly),
    /// Nonnegative multipliers, one per constraint, summing to one, whose
    /// combination of the constraints reads `0 ≤ -margin`.
    InfeasibleDual(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub kind: CertificateKind,
    pub family: LpFamily,
    /// Feasible: smallest constraint slack (≥ 0). Infeasible: the strictly
    /// positive contradiction margin.
    pub verification_margin: Rational,
}

impl DegreeCertificate {
    pub fn is_feasible(&self) -> bool {
        !matches!(self.kind, CertificateKind::InfeasibleDual(_))
    }

    pub fn degree(&self) -> usize {
        self.family.dimension_degree()
    }

    /// Re-checks the certificate against `inst` in exact arithmetic and
    /// returns the margin it achieves.
    pub fn verify(&self, inst: &LpInstance) -> Result<Rational> {
        if self.family != inst.family {
            return Err(Error::Dimension("certificate is for another family".into()));
        }
        match &self.kind {
            CertificateKind::FeasibleWitness(p) => {
                if p.degree() > inst.family.dimension_degree() && !p.is_zero() {
                    return Err(Error::Precondition(format!(
                        "witness degree {} exceeds {}",
                        p.degree(),
                        inst.family.dimension_degree()
                    )));
                }
                Ok(min_slack(inst, p.to_monomial().coeffs(), 0))
            }
            CertificateKind::FeasibleLaurent(q) => {
                let LpFamily::Laurent { deg_u, deg_v } = inst.family else {
                    return Err(Error::Dimension(
                        "Laurent witness for polynomial family".into(),
                    ));
                };
                if q.max_exponent() > deg_u as i64 || -q.min_exponent() > deg_v as i64 {
                    return Err(Error::Precondition(
                        "witness exponents out of window".into(),
                    ));
                }
                // x^dv·q(x) as one polynomial.
                let mut coeffs = vec![Rational::zero(); deg_u + deg_v + 1];
                for (j, c) in q.u.to_monomial().coeffs().iter().enumerate() {
                    coeffs[deg_v + j] += c;
                }
                for (i, c) in q.v.to_monomial().coeffs().iter().enumerate() {
                    coeffs[deg_v - i] += c;
                }
                Ok(min_slack(inst, &coeffs, deg_v))
            }
            CertificateKind::InfeasibleDual(y) => verify_dual(inst, y),
        }
    }
}

fn verify_dual(inst: &LpInstance, y: &[Rational]) -> Result<Rational> {
    if y.len() != inst.constraints.len() {
        return Err(Error::Dimension("multiplier count".into()));
    }
    if y.iter().any(|v| v.is_negative()) {
        return Err(Error::Precondition("negative multiplier".into()));
    }
    let d = inst.family.dimension_degree();
    let shift = inst.family.shift() as i64;
    // Σ y_i s_i ω_i ξ_i^j must vanish for every basis function.
    let mut moments = vec![Rational::zero(); d + 1];
    let mut combined_bound = Rational::zero();
    for (c, yi) in inst.constraints.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        let (s, b) = c.signed();
        let mut term = yi * pow(&c.point, -shift) * int(s as i64);
        for m in moments.iter_mut() {
            *m += &term;
            term *= &c.point;
        }
        combined_bound += yi * b;
    }
    if moments.iter().any(|m| !m.is_zero()) {
        return Err(Error::Precondition(
            "multipliers do not cancel the unknowns".into(),
        ));
    }
    Ok(-combined_bound)
}

fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

const MAX_EXCHANGES: usize = 500;

/// Decides feasibility of `inst` and returns an exactly verified certificate
/// either way.
pub fn solve_certified(inst: &LpInstance) -> Result<DegreeCertificate> {
    if inst.constraints.is_empty() {
        return Err(Error::Precondition("no constraints".into()));
    }
    if let LpFamily::Laurent { .. } = inst.family {
        if inst.constraints.iter().any(|c| !c.point.is_positive()) {
            return Err(Error::Precondition(
                "Laurent points must be positive".into(),
            ));
        }
    }
    let pts = Points::new(inst);
    if let Some(cert) = pointwise_conflict(inst, &pts) {
        return Ok(cert);
    }
    let d = inst.family.dimension_degree();
    if d + 1 >= pts.values.len() {
        return interpolation_witness(inst, &pts);
    }

    let float = float_optimum(inst, &pts)?;
    let mut last_error = None;
    if let Some(start) = float.start {
        match refine(inst, &pts, start) {
            Ok(cert) => {
                if !cert.is_feasible() && cert.verify(inst)? != cert.verification_margin {
                    return Err(Error::Solver(
                        "dual certificate failed re-verification".into(),
                    ));
                }
                return Ok(cert);
            }
            Err(e) => last_error = Some(e),
        }
    }
    // The float witness has slack at least the optimal value everywhere, so
    // rounding it is safe when that value is clearly positive.
    if let Some((nodes, values)) = float.witness {
        let shift = inst.family.shift() as i64;
        let xs: Vec<Rational> = nodes.iter().map(|&r| pts.values[r].clone()).collect();
        // Short rationals near the float values first, then the floats.
        for snap in [true, false] {
            let ys: Vec<Rational> = nodes
                .iter()
                .zip(&values)
                .map(|(&r, &v)| {
                    let y = if snap {
                        let delta = from_f64(1e-9 * v.abs().max(1.0));
                        let c = from_f64(v);
                        simplest_between(&(&c - &delta), &(&c + &delta))
                    } else {
                        from_f64(v)
                    };
                    y * pow(&pts.values[r], shift)
                })
                .collect();
            if let Ok(cert) = finish_feasible(inst, newton_interpolate(&xs, &ys)) {
                return Ok(cert);
            }
        }
    }
    Err(last_error.unwrap_or_else(|| Error::Solver("no alternating start set".into())))
}

/// Exact single-point exchange from an alternating start set until the
/// witness is feasible or the levelled value turns negative.
fn refine(inst: &LpInstance, pts: &Points, start: Vec<usize>) -> Result<DegreeCertificate> {
    let d = inst.family.dimension_degree();
    let mut active = start;
    let mut seen = std::collections::HashSet::new();
    for _ in 0..MAX_EXCHANGES {
        active.sort_by_key(|&i| pts.of_constraint[i]);
        if !seen.insert(active.clone()) {
            return Err(Error::Solver("exchange cycled".into()));
        }
        let violations = match exchange(inst, pts, &active)? {
            Exchange::Certified(cert) => return Ok(cert),
            Exchange::Violated(v) => v,
        };
        let (e, _) = violations
            .into_iter()
            .max_by(|a, b| raw_cmp(&a.1, &b.1))
            .expect("nonempty");
        let pe = pts.of_constraint[e];
        let se = inst.constraints[e].signed().0;
        let sign = |i: usize| inst.constraints[active[i]].signed().0;
        let pos = active.partition_point(|&i| pts.of_constraint[i] < pe);
        if pos < active.len() && pts.of_constraint[active[pos]] == pe {
            return Err(Error::Solver("exchange hit both sides of one point".into()));
        }
        let last = d + 1;
        if pos == 0 {
            if sign(0) == se {
                active[0] = e;
            } else {
                active.pop();
                active.insert(0, e);
            }
        } else if pos == active.len() {
            if sign(last) == se {
                active[last] = e;
            } else {
                active.remove(0);
                active.push(e);
            }
        } else if sign(pos - 1) == se {
            active[pos - 1] = e;
        } else {
            active[pos] = e;
        }
    }
    Err(Error::Solver(format!(
        "no certificate after {MAX_EXCHANGES} exchanges"
    )))
}

/// Distinct points and the constraint-to-point map.
struct Points {
    values: Vec<Rational>,
    of_constraint: Vec<usize>,
}

impl Points {
    fn new(inst: &LpInstance) -> Self {
        let mut values: Vec<Rational> = inst.constraints.iter().map(|c| c.point.clone()).collect();
        values.sort();
        values.dedup();
        let of_constraint = inst
            .constraints
            .iter()
            .map(|c| values.binary_search(&c.point).expect("present"))
            .collect();
        Points {
            values,
            of_constraint,
        }
    }
}

/// Per-point intervals `[lo, hi]` implied by the constraints.
fn point_intervals(inst: &LpInstance, pts: &Points) -> Vec<(Option<usize>, Option<usize>)> {
    let mut iv: Vec<(Option<usize>, Option<usize>)> = vec![(None, None); pts.values.len()];
    for (i, c) in inst.constraints.iter().enumerate() {
        let p = pts.of_constraint[i];
        match c.relation {
            Relation::Le => {
                if iv[p].1.is_none_or(|j| c.bound < inst.constraints[j].bound) {
                    iv[p].1 = Some(i);
                }
            }
            Relation::Ge => {
                if iv[p].0.is_none_or(|j| c.bound > inst.constraints[j].bound) {
                    iv[p].0 = Some(i);
                }
            }
        }
    }
    iv
}

fn pointwise_conflict(inst: &LpInstance, pts: &Points) -> Option<DegreeCertificate> {
    for (lo, hi) in point_intervals(inst, pts) {
        if let (Some(l), Some(h)) = (lo, hi) {
            let gap = &inst.constraints[l].bound - &inst.constraints[h].bound;
            if gap.is_positive() {
                let mut y = vec![Rational::zero(); inst.constraints.len()];
                y[l] = Rational::new(1.into(), 2.into());
                y[h] = Rational::new(1.into(), 2.into());
                return Some(DegreeCertificate {
                    kind: CertificateKind::InfeasibleDual(y),
                    family: inst.family,
                    verification_margin: gap / int(2),
                });
            }
        }
    }
    None
}

fn interpolation_witness(inst: &LpInstance, pts: &Points) -> Result<DegreeCertificate> {
    let shift = inst.family.shift() as i64;
    let iv = point_intervals(inst, pts);
    let targets: Vec<Rational> = iv
        .iter()
        .map(|(lo, hi)| {
            let lo = lo.map(|i| inst.constraints[i].bound.clone());
            let hi = hi.map(|i| inst.constraints[i].bound.clone());
            match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / int(2),
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => Rational::zero(),
            }
        })
        .collect();
    let scaled: Vec<Rational> = pts
        .values
        .iter()
        .zip(&targets)
        .map(|(x, t)| t * pow(x, shift))
        .collect();
    let p = newton_interpolate(&pts.values, &scaled);
    finish_feasible(inst, p)
}

fn finish_feasible(inst: &LpInstance, p: Vec<Rational>) -> Result<DegreeCertificate> {
    let kind = match inst.family {
        LpFamily::Polynomial { .. } => CertificateKind::FeasibleWitness(Polynomial::monomial(p)),
        LpFamily::Laurent { deg_u, deg_v } => {
            let mut p = p;
            p.resize(deg_u + deg_v + 1, Rational::zero());
            let u = Polynomial::monomial(p[deg_v..].to_vec());
            let mut v = vec![Rational::zero()];
            v.extend(p[..deg_v].iter().rev().cloned());
            CertificateKind::FeasibleLaurent(LaurentPoly::new(u, Polynomial::monomial(v)))
        }
    };
    let mut cert = DegreeCertificate {
        kind,
        family: inst.family,
        verification_margin: Rational::zero(),
    };
    let margin = cert.verify(inst)?;
    if margin.is_negative() {
        return Err(Error::Solver(format!(
            "interpolated witness violates by {}",
            -margin
        )));
    }
    cert.verification_margin = margin;
    Ok(cert)
}

/// Monomial coefficients of the interpolant through `(x_i, y_i)`.
pub(crate) fn newton_interpolate(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut dd = y.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&x[i] - &x[i - j]);
        }
    }
    let mut coeffs = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // coeffs ← coeffs·(ξ - x_i) + dd_i
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &x[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Orthonormal basis values (times `sqrt(M)`) of `span{ω ξ^j : j ≤ d}` on
/// the points.
fn arnoldi_basis(xi: &[f64], omega: &[f64], d: usize) -> DMatrix<f64> {
    let m = xi.len();
    let mut q = DMatrix::<f64>::zeros(m, d + 1);
    let start = DVector::from_column_slice(omega);
    q.set_column(0, &(&start / start.norm()));
    for j in 0..d {
        let mut v = q.column(j).component_mul(&DVector::from_column_slice(xi));
        for _ in 0..2 {
            for i in 0..=j {
                let h = q.column(i).dot(&v);
                v -= q.column(i) * h;
            }
        }
        let nv = v.norm();
        q.set_column(j + 1, &(v / nv));
    }
    q * (m as f64).sqrt()
}

struct FloatOptimum {
    /// Alternating active set near the float optimum.
    start: Option<Vec<usize>>,
    /// Well-conditioned interpolation nodes and the float witness values
    /// there, present when the optimal value is clearly positive.
    witness: Option<(Vec<usize>, Vec<f64>)>,
}

/// Rows of `q` chosen greedily by partial pivoting, one per column.
fn pivot_rows(q: &DMatrix<f64>) -> Vec<usize> {
    let mut m = q.clone();
    let mut used = vec![false; m.nrows()];
    let mut rows = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let r = (0..m.nrows())
            .filter(|&r| !used[r])
            .max_by(|&a, &b| m[(a, j)].abs().total_cmp(&m[(b, j)].abs()))
            .expect("enough rows");
        used[r] = true;
        rows.push(r);
        let piv = m[(r, j)];
        if piv == 0.0 {
            continue;
        }
        for i in 0..m.nrows() {
            if !used[i] {
                let f = m[(i, j)] / piv;
                for k in j..m.ncols() {
                    m[(i, k)] -= f * m[(r, k)];
                }
            }
        }
    }
    rows
}

fn float_optimum(inst: &LpInstance, pts: &Points) -> Result<FloatOptimum> {
    let d = inst.family.dimension_degree();
    let shift = inst.family.shift() as i32;
    let xi: Vec<f64> = pts.values.iter().map(to_f64).collect();
    let omega: Vec<f64> = xi.iter().map(|x| x.powi(-shift)).collect();
    let omax = omega.iter().cloned().fold(0.0, f64::max);
    let omega: Vec<f64> = omega.iter().map(|o| o / omax).collect();
    let q = arnoldi_basis(&xi, &omega, d);

    let n = inst.constraints.len();
    let mut a = DMatrix::<f64>::zeros(d + 2, n);
    let mut cost = vec![0.0; n];
    for (i, c) in inst.constraints.iter().enumerate() {
        let (s, _) = c.signed();
        let row = q.row(pts.of_constraint[i]);
        for j in 0..=d {
            a[(j, i)] = s as f64 * row[j];
        }
        a[(d + 1, i)] = 1.0;
        cost[i] = to_f64(&c.signed().1);
    }
    let mut rhs = vec![0.0; d + 2];
    rhs[d + 1] = 1.0;
    let (status, sol) = simplex::solve(&a, &rhs, &cost)?;
    let sol = match (status, sol) {
        (SimplexStatus::Optimal, Some(s)) => s,
        (st, _) => return Err(Error::Solver(format!("dual program reported {st:?}"))),
    };
    let t = sol.duals[d + 1];
    let mut items: Vec<Vec<(usize, i8, f64)>> = vec![Vec::new(); pts.values.len()];
    for (i, c) in inst.constraints.iter().enumerate() {
        let (s, _) = c.signed();
        let p = pts.of_constraint[i];
        let v: f64 = (0..=d).map(|j| q[(p, j)] * sol.duals[j]).sum();
        items[p].push((i, s, cost[i] - s as f64 * v - t));
    }
    let start = alternating_set(&items, d + 2);
    let bmax = cost.iter().fold(1.0f64, |m, b| m.max(b.abs()));
    let witness = (t > 1e-6 * bmax).then(|| {
        let nodes = pivot_rows(&q);
        let values = nodes
            .iter()
            .map(|&r| (0..=d).map(|j| q[(r, j)] * sol.duals[j]).sum())
            .collect();
        (nodes, values)
    });
    Ok(FloatOptimum { start, witness })
}

/// Greedy alternating subsequence over points among items with slack at
/// most `tau`, keeping the least slack within each run.
fn alternating_runs(items: &[Vec<(usize, i8, f64)>], tau: f64, first: i8) -> Vec<(usize, i8, f64)> {
    let mut out: Vec<(usize, i8, f64)> = Vec::new();
    for at_point in items {
        let want = out.last().map_or(first, |l| -l.1);
        let pick = |s: i8| {
            at_point
                .iter()
                .filter(|it| it.1 == s && it.2 <= tau)
                .min_by(|a, b| a.2.total_cmp(&b.2))
                .copied()
        };
        if let Some(it) = pick(want) {
            out.push(it);
        } else if let (Some(it), Some(last)) = (pick(-want), out.last_mut()) {
            if it.2 < last.2 {
                *last = it;
            }
        }
    }
    out
}

/// `len` constraints at distinct points with alternating signs whose largest
/// float slack is as small as possible. `items` lists the constraints of each
/// point, in point order.
fn alternating_set(items: &[Vec<(usize, i8, f64)>], len: usize) -> Option<Vec<usize>> {
    let mut taus: Vec<f64> = items.iter().flatten().map(|it| it.2).collect();
    taus.sort_by(f64::total_cmp);
    let longest = |tau: f64| {
        let (a, b) = (
            alternating_runs(items, tau, 1),
            alternating_runs(items, tau, -1),
        );
        if a.len() >= b.len() {
            a
        } else {
            b
        }
    };
    let k = taus.partition_point(|&tau| longest(tau).len() < len);
    let reps = longest(*taus.get(k)?);
    let window = (0..=reps.len() - len)
        .min_by(|&a, &b| {
            let sa: f64 = reps[a..a + len].iter().map(|r| r.2).sum();
            let sb: f64 = reps[b..b + len].iter().map(|r| r.2).sum();
            sa.total_cmp(&sb)
        })
        .expect("at least one window");
    Some(reps[window..window + len].iter().map(|r| r.0).collect())
}

enum Exchange {
    Certified(DegreeCertificate),
    /// Constraint indices with their exact violation by the extremal witness.
    Violated(Vec<(usize, (BigInt, BigInt))>),
}

/// Exact dual weights and extremal witness on an active set of `D + 2`
/// constraints at distinct points.
fn exchange(inst: &LpInstance, pts: &Points, active: &[usize]) -> Result<Exchange> {
    let d = inst.family.dimension_degree();
    let shift = inst.family.shift() as i64;
    let mut idx: Vec<usize> = active.to_vec();
    idx.sort_by_key(|&i| pts.of_constraint[i]);
    if idx
        .windows(2)
        .any(|w| pts.of_constraint[w[0]] == pts.of_constraint[w[1]])
    {
        return Err(Error::Solver("active set repeats a point".into()));
    }
    let xs: Vec<Rational> = idx
        .iter()
        .map(|&i| inst.constraints[i].point.clone())
        .collect();
    let sb: Vec<(i8, Rational)> = idx.iter().map(|&i| inst.constraints[i].signed()).collect();
    // Divided-difference weights annihilate polynomials of degree ≤ D.
    let z: Vec<Rational> = (0..xs.len())
        .map(|i| {
            let mut prod = Rational::one();
            for j in 0..xs.len() {
                if j != i {
                    prod *= &xs[i] - &xs[j];
                }
            }
            prod.recip()
        })
        .collect();
    let sigma: Vec<Rational> = z
        .iter()
        .zip(&xs)
        .zip(&sb)
        .map(|((zi, x), (s, _))| zi * pow(x, shift) * int(*s as i64))
        .collect();
    let positive = sigma.iter().all(|v| v.is_positive());
    let negative = sigma.iter().all(|v| v.is_negative());
    if !(positive || negative) {
        return Err(Error::Solver("active set weights change sign".into()));
    }
    let total: Rational = sigma.iter().sum();
    let y: Vec<Rational> = sigma.iter().map(|v| v / &total).collect();
    let t: Rational = y.iter().zip(&sb).map(|(yi, (_, b))| yi * b).sum();

    if t.is_negative() {
        let mut mult = vec![Rational::zero(); inst.constraints.len()];
        for (k, &i) in idx.iter().enumerate() {
            mult[i] = y[k].clone();
        }
        return Ok(Exchange::Certified(DegreeCertificate {
            kind: CertificateKind::InfeasibleDual(mult),
            family: inst.family,
            verification_margin: -t,
        }));
    }

    // Extremal witness: s_i·f(x_i) = b_i - t on the active set.
    let vals: Vec<Rational> = xs
        .iter()
        .zip(&sb)
        .map(|(x, (s, b))| (b - &t) * int(*s as i64) * pow(x, shift))
        .collect();
    let p = newton_interpolate(&xs[..=d], &vals[..=d]);
    let violations = violated(inst, &p);
    if violations.is_empty() {
        finish_feasible(inst, p).map(Exchange::Certified)
    } else {
        Ok(Exchange::Violated(violations))
    }
}

/// Exact slacks `b - s·ω·P` for every constraint, as unreduced fractions
/// with positive denominators. `p` holds the coefficients of `P`, whose
/// values are divided by `x^shift`.
fn raw_slacks(inst: &LpInstance, p: &[Rational], shift: usize) -> Vec<(BigInt, BigInt)> {
    let den = p.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let nums: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let deg = nums.len() - 1;
    inst.constraints
        .iter()
        .map(|c| {
            let (s, b) = c.signed();
            let (xn, xd) = (c.point.numer(), c.point.denom());
            // P(x) = Σ n_j xn^j xd^(deg-j) / (den·xd^deg).
            let mut xd_pows = Vec::with_capacity(deg + 1);
            let mut xd_pow = BigInt::one();
            for _ in 0..=deg {
                xd_pows.push(xd_pow.clone());
                xd_pow *= xd;
            }
            let mut acc = BigInt::zero();
            for (j, n) in nums.iter().enumerate().rev() {
                acc = acc * xn + n * &xd_pows[deg - j];
            }
            let mut num = acc;
            let mut dd = &den * &xd_pows[deg];
            if shift > 0 {
                num *= num_traits::pow(xd.clone(), shift);
                dd *= num_traits::pow(xn.clone(), shift);
            }
            if dd.is_negative() {
                num = -num;
                dd = -dd;
            }
            if s < 0 {
                num = -num;
            }
            (b.numer() * &dd - num * b.denom(), dd * b.denom())
        })
        .collect()
}

fn raw_cmp(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> std::cmp::Ordering {
    (&a.0 * &b.1).cmp(&(&b.0 * &a.1))
}

/// Exact violations of `s·ω·P ≤ b`, unreduced.
fn violated(inst: &LpInstance, p: &[Rational]) -> Vec<(usize, (BigInt, BigInt))> {
    raw_slacks(inst, p, inst.family.shift())
        .into_iter()
        .enumerate()
        .filter(|(_, (n, _))| n.is_negative())
        .map(|(i, (n, d))| (i, (-n, d)))
        .collect()
}

/// Smallest exact slack over all constraints.
fn min_slack(inst: &LpInstance, p: &[Rational], shift: usize) -> Rational {
    raw_slacks(inst, p, shift)
        .into_iter()
        .min_by(raw_cmp)
        .map_or_else(Rational::zero, |(n, d)| Rational::new(n, d))
}

/// Number of nonzero multipliers in a dual certificate.
pub fn support_size(cert: &DegreeCertificate) -> usize {
    match &cert.kind {
        CertificateKind::InfeasibleDual(y) => y.iter().filter(|v| !v.is_zero()).count(),
        _ => 0,
    }
}
