use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{to_f64, Rational};

/// `coeff · √radicand` with a squarefree positive radicand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalScalar {
    pub coeff: Rational,
    pub radicand: BigInt,
}

/// Splits `n > 0` as `s² · r` with `r` squarefree.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            s *= &p;
        }
        p += 1;
    }
    (s, rest)
}

impl RadicalScalar {
    pub fn rational(coeff: Rational) -> Self {
        RadicalScalar {
            coeff,
            radicand: BigInt::one(),
        }
    }

    /// `coeff · √n`, normalized.
    pub fn new(coeff: Rational, n: &BigInt) -> Self {
        assert!(n.is_positive(), "radicand must be positive");
        if coeff.is_zero() {
            return Self::rational(coeff);
        }
        let (s, r) = square_part(n);
        RadicalScalar {
            coeff: coeff * Rational::from_integer(s),
            radicand: r,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one() || self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = to_f64(&Rational::from_integer(self.radicand.clone()));
        to_f64(&self.coeff) * r.sqrt()
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}·√{}", self.coeff, self.radicand)
        }
    }
}

/// `⟨S|S'⟩^k = (t / √(w1·w2))^k` for `|S| = w1`, `|S'| = w2`, `|S ∩ S'| = t`.
pub fn gram_entry(w1: u64, w2: u64, t: u64, k: u32) -> RadicalScalar {
    assert!(t <= w1.min(w2), "intersection larger than a set");
    if k == 0 {
        return RadicalScalar::rational(Rational::one());
    }
    let prod = BigInt::from(w1) * BigInt::from(w2);
    let tk = num_traits::pow(BigInt::from(t), k as usize);
    let half = (k / 2) as usize;
    let base = Rational::new(tk, num_traits::pow(prod.clone(), half));
    if k.is_multiple_of(2) {
        return RadicalScalar::rational(base);
    }
    // t^k / (w1 w2)^{(k+1)/2} · √(w1 w2), and √ of a square is exact.
    let root = prod.sqrt();
    if &root * &root == prod {
        return RadicalScalar::rational(base / Rational::from_integer(root));
    }
    RadicalScalar::new(base / Rational::from_integer(prod.clone()), &prod)
}
