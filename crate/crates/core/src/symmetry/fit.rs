use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::degree::lp::newton_interpolate;
use crate::error::{Error, Result};
use crate::poly::{from_f64, int, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitMethod {
    ExactSolveThenVerify,
    LeastSquares,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FitCoefficients {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Fit of `q(k) = Σ_{e = min..max} c_e k^e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub min_exp: i64,
    pub max_exp: i64,
    /// Coefficients for exponents `min_exp..=max_exp`.
    pub coefficients: FitCoefficients,
    /// Largest absolute deviation on the points not used by the solve (all
    /// points for least squares).
    pub residual: f64,
    /// Exact form of `residual` for the exact method.
    pub residual_exact: Option<Rational>,
    pub method: FitMethod,
    pub held_out: usize,
}

impl FitResult {
    pub fn exponent_window(&self) -> (i64, i64) {
        (self.min_exp, self.max_exp)
    }

    pub fn is_exact_fit(&self) -> bool {
        self.residual_exact.as_ref().is_some_and(Zero::is_zero)
    }
}

fn check_samples<T>(samples: &[(u64, T)], unknowns: usize) -> Result<Vec<usize>> {
    if samples.len() < unknowns + 1 {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            unknowns,
            needed: unknowns + 1,
        });
    }
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by_key(|&i| samples[i].0);
    if samples[order[0]].0 == 0 {
        return Err(Error::Pole);
    }
    if order.windows(2).any(|w| samples[w[0]].0 == samples[w[1]].0) {
        return Err(Error::Precondition("sample points must be distinct".into()));
    }
    Ok(order)
}

fn kpow(k: u64, e: i64) -> Rational {
    let k = int(k as i64);
    if e >= 0 {
        num_traits::pow(k, e as usize)
    } else {
        num_traits::pow(k.recip(), (-e) as usize)
    }
}

/// Exact solve on the smallest `max - min + 1` sample points, verified on the
/// rest.
pub fn fit_window(samples: &[(u64, Rational)], min_exp: i64, max_exp: i64) -> Result<FitResult> {
    if min_exp > max_exp {
        return Err(Error::Precondition(format!(
            "empty exponent window [{min_exp}, {max_exp}]"
        )));
    }
    let unknowns = (max_exp - min_exp + 1) as usize;
    let order = check_samples(samples, unknowns)?;
    let (fit, held) = order.split_at(unknowns);
    // k^(-min)·q(k) is an ordinary polynomial of degree unknowns - 1.
    let xs: Vec<Rational> = fit.iter().map(|&i| int(samples[i].0 as i64)).collect();
    let ys: Vec<Rational> = fit
        .iter()
        .map(|&i| &samples[i].1 * kpow(samples[i].0, -min_exp))
        .collect();
    let mut coeffs = newton_interpolate(&xs, &ys);
    coeffs.resize(unknowns, Rational::zero());
    let mut worst = Rational::zero();
    for &i in held {
        let (k, ref q) = samples[i];
        let pred: Rational = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * kpow(k, min_exp + j as i64))
            .sum();
        let dev = (pred - q).abs();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(FitResult {
        min_exp,
        max_exp,
        coefficients: FitCoefficients::Exact(coeffs),
        residual: to_f64(&worst),
        residual_exact: Some(worst),
        method: FitMethod::ExactSolveThenVerify,
        held_out: held.len(),
    })
}

/// Window `[-R, 2T + R]` for an algorithm with `R` copies and `T` queries.
pub fn fit_laurent(samples: &[(u64, Rational)], r: usize, t: usize) -> Result<FitResult> {
    fit_window(samples, -(r as i64), (2 * t + r) as i64)
}

/// [`fit_laurent`] on floating-point curve values, each taken exactly.
pub fn fit_laurent_f64(samples: &[(u64, f64)], r: usize, t: usize) -> Result<FitResult> {
    let exact: Vec<(u64, Rational)> = samples.iter().map(|&(k, v)| (k, from_f64(v))).collect();
    fit_laurent(&exact, r, t)
}

/// Least-squares fit for noisy curves, with columns scaled to unit norm.
pub fn fit_window_least_squares(
    samples: &[(u64, f64)],
    min_exp: i64,
    max_exp: i64,
) -> Result<FitResult> {
    if min_exp > max_exp {
        return Err(Error::Precondition(format!(
            "empty exponent window [{min_exp}, {max_exp}]"
        )));
    }
    let unknowns = (max_exp - min_exp + 1) as usize;
    check_samples(samples, unknowns)?;
    let m = samples.len();
    let mut a = DMatrix::<f64>::from_fn(m, unknowns, |i, j| {
        (samples[i].0 as f64).powi((min_exp + j as i64) as i32)
    });
    let norms: Vec<f64> = (0..unknowns).map(|j| a.column(j).norm()).collect();
    for (j, nj) in norms.iter().enumerate() {
        a.column_mut(j).unscale_mut(*nj);
    }
    let b = DVector::from_iterator(m, samples.iter().map(|s| s.1));
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-13)
        .map_err(|e| Error::Solver(format!("least squares: {e}")))?;
    let residual = (&a * &x - &b).amax();
    let coeffs = x.iter().zip(&norms).map(|(c, n)| c / n).collect();
    Ok(FitResult {
        min_exp,
        max_exp,
        coefficients: FitCoefficients::Float(coeffs),
        residual,
        residual_exact: None,
        method: FitMethod::LeastSquares,
        held_out: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn curve(f: impl Fn(i64) -> Rational) -> Vec<(u64, Rational)> {
        (1..=8).map(|k| (k as u64, f(k))).collect()
    }

    #[test]
    fn constant_fits() {
        let r = fit_laurent(&curve(|_| int(1)), 1, 0).unwrap();
        assert_eq!(r.exponent_window(), (-1, 1));
        assert!(r.is_exact_fit());
        assert_eq!(
            r.coefficients,
            FitCoefficients::Exact(vec![int(0), int(1), int(0)])
        );
    }

    #[test]
    fn collision_curve_needs_negative_exponent() {
        let c = curve(|k| rat(1, k));
        let r = fit_laurent(&c, 2, 0).unwrap();
        assert!(r.is_exact_fit());
        assert_eq!(
            r.coefficients,
            FitCoefficients::Exact(vec![int(0), int(1), int(0), int(0), int(0)])
        );
        assert!(!fit_window(&c, 0, 5).unwrap().is_exact_fit());
        assert!(!fit_window(&c, -4, -2).unwrap().is_exact_fit());
    }

    #[test]
    fn projection_curve() {
        let r = fit_laurent(&curve(|k| rat(k, 8)), 1, 0).unwrap();
        assert!(r.is_exact_fit());
        assert_eq!(
            r.coefficients,
            FitCoefficients::Exact(vec![int(0), int(0), rat(1, 8)])
        );
    }

    #[test]
    fn underdetermined_is_an_error() {
        let c: Vec<_> = curve(|_| int(1)).into_iter().take(3).collect();
        assert!(matches!(
            fit_laurent(&c, 1, 0),
            Err(Error::Underdetermined { needed: 4, .. })
        ));
    }

    #[test]
    fn least_squares_recovers_noiseless_curve() {
        let c: Vec<(u64, f64)> = (1..=8)
            .map(|k| (k, 0.5 / k as f64 + 0.25 * k as f64))
            .collect();
        let r = fit_window_least_squares(&c, -1, 1).unwrap();
        assert_eq!(r.method, FitMethod::LeastSquares);
        assert!(r.residual < 1e-12);
        let FitCoefficients::Float(x) = r.coefficients else {
            panic!()
        };
        assert!((x[0] - 0.5).abs() < 1e-10 && x[1].abs() < 1e-10 && (x[2] - 0.25).abs() < 1e-10);
    }
}
