use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// `q(k) = u(k) + v(1/k)`: maximum exponent `deg u`, minimum exponent `-deg v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub u: Polynomial,
    pub v: Polynomial,
}

impl LaurentPoly {
    pub fn new(u: Polynomial, v: Polynomial) -> Self {
        LaurentPoly { u, v }
    }

    /// Builds `Σ c_e k^e` from exponent/coefficient pairs. The constant term
    /// is placed in `u`.
    pub fn from_exponents(terms: &[(i64, Rational)]) -> Self {
        let max = terms.iter().map(|t| t.0).max().unwrap_or(0).max(0) as usize;
        let min = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        let mut u = vec![Rational::zero(); max + 1];
        let mut v = vec![Rational::zero(); (-min) as usize + 1];
        for (e, c) in terms {
            if *e >= 0 {
                u[*e as usize] += c;
            } else {
                v[(-e) as usize] += c;
            }
        }
        LaurentPoly::new(Polynomial::monomial(u), Polynomial::monomial(v))
    }

    pub fn max_exponent(&self) -> i64 {
        self.u.degree() as i64
    }

    pub fn min_exponent(&self) -> i64 {
        -(self.v.degree() as i64)
    }

    pub fn eval(&self, k: &Rational) -> Result<Rational> {
        if k.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.u.eval(k) + self.v.eval(&(Rational::one() / k)))
    }
}

/// Exact `u(k) + v(1/k)`; `k = 0` is a pole.
pub fn laurent_eval(q: &LaurentPoly, k: &Rational) -> Result<Rational> {
    q.eval(k)
}
