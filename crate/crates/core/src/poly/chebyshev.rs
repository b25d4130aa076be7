use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Rational};

/// Degree-`d` Chebyshev polynomial of the first kind in the monomial basis,
/// from `T_{n+1} = 2x·T_n - T_{n-1}`.
pub fn chebyshev(d: usize) -> Polynomial {
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    if d == 0 {
        cur = prev;
    } else {
        for _ in 1..d {
            let mut next = vec![BigInt::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c << 1;
            }
            for (n, p) in next.iter_mut().zip(&prev) {
                *n -= p;
            }
            prev = std::mem::replace(&mut cur, next);
        }
    }
    Polynomial::monomial(cur.into_iter().map(Rational::from_integer).collect())
}
