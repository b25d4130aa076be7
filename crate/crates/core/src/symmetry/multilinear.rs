use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::degree::lp::newton_interpolate;
use crate::error::{Error, Result};
use crate::poly::{int, Polynomial, Rational};

/// Largest variable count the brute-force symmetrizer will enumerate.
pub const SYMMETRIZE_MAX_VARS: usize = 20;

/// Multilinear polynomial in `x_1..x_N`, each monomial stored as a bit mask
/// of its variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeMap<u64, Rational>,
}

impl MultilinearPoly {
    pub fn new(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::Precondition(format!(
                "at most 64 variables, got {n}"
            )));
        }
        Ok(MultilinearPoly {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        let mut p = Self::new(n)?;
        p.add_term(&[], c)?;
        Ok(p)
    }

    /// Adds `c · Π_{i ∈ vars} x_i`; variables are 0-based and repeats collapse
    /// since `x_i² = x_i` on the cube.
    pub fn add_term(&mut self, vars: &[usize], c: Rational) -> Result<()> {
        let mut mask = 0u64;
        for &v in vars {
            if v >= self.n {
                return Err(Error::Precondition(format!(
                    "variable {v} out of range for N = {}",
                    self.n
                )));
            }
            mask |= 1 << v;
        }
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Value at the input whose set bits are the ones.
    pub fn eval_bits(&self, x: u64) -> Rational {
        self.terms
            .iter()
            .filter(|(m, _)| *m & x == **m)
            .map(|(_, c)| c.clone())
            .sum()
    }
}

/// `q(k) = E_{|X| = k} p(X)` by enumerating every input of the cube, then
/// interpolating through `k = 0..N`.
pub fn symmetrize(p: &MultilinearPoly) -> Result<Polynomial> {
    let n = p.n();
    if n > SYMMETRIZE_MAX_VARS {
        return Err(Error::Budget {
            what: "symmetrize inputs",
            needed: 1u128 << n,
            budget: 1u128 << SYMMETRIZE_MAX_VARS,
        });
    }
    let mut sums = vec![Rational::zero(); n + 1];
    let mut counts = vec![0i64; n + 1];
    for x in 0..(1u64 << n) {
        let k = x.count_ones() as usize;
        sums[k] += p.eval_bits(x);
        counts[k] += 1;
    }
    let ks: Vec<Rational> = (0..=n as i64).map(int).collect();
    let means: Vec<Rational> = sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| s / int(c))
        .collect();
    let q = Polynomial::monomial(newton_interpolate(&ks, &means));
    if q.degree() > p.degree() {
        return Err(Error::Precondition(format!(
            "symmetrized degree {} exceeds input degree {}",
            q.degree(),
            p.degree()
        )));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn examples() {
        let mut p = MultilinearPoly::new(3).unwrap();
        p.add_term(&[0], int(1)).unwrap();
        assert_eq!(
            symmetrize(&p).unwrap(),
            Polynomial::monomial(vec![int(0), rat(1, 3)])
        );

        let c = MultilinearPoly::constant(5, rat(7, 2)).unwrap();
        assert_eq!(symmetrize(&c).unwrap(), Polynomial::constant(rat(7, 2)));

        // k(k-1)/12
        let mut p = MultilinearPoly::new(4).unwrap();
        p.add_term(&[0, 1], int(1)).unwrap();
        let q = symmetrize(&p).unwrap();
        assert_eq!(
            q,
            Polynomial::monomial(vec![int(0), rat(-1, 12), rat(1, 12)])
        );
    }

    #[test]
    fn repeated_variables_collapse() {
        let mut p = MultilinearPoly::new(2).unwrap();
        p.add_term(&[1, 1], int(2)).unwrap();
        p.add_term(&[1], int(-2)).unwrap();
        assert_eq!(p.degree(), 0);
        assert!(p.terms().next().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let p = MultilinearPoly::new(21).unwrap();
        assert!(matches!(symmetrize(&p), Err(Error::Budget { .. })));
    }
}
