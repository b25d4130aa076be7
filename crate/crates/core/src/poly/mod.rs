//! Exact univariate polynomial arithmetic over arbitrary-precision rationals.
//!
//! Everything here is immutable and deterministic. Floating point never
//! appears on these paths; callers that need `f64` convert at the edge with
//! [`to_f64`].

mod chebyshev;
mod laurent;
mod polynomial;
mod range;
pub(crate) mod sturm;

pub use chebyshev::chebyshev;
pub use laurent::{laurent_eval, LaurentPoly};
pub use polynomial::{Basis, Polynomial};
pub use range::{range_on_interval, RangeReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Nearest `f64`; saturates to ±inf for values outside the float range.
pub fn to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() && (v != 0.0 || x.is_zero()) {
            return v;
        }
    }
    // Fall back on bit-length scaling for huge or tiny magnitudes.
    let n = x.numer();
    let d = x.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (nn, dd) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let mantissa = Rational::new(nn, dd).to_f64().unwrap_or(0.0);
    mantissa * 2f64.powi(shift.clamp(-1100, 1100) as i32)
}

/// Decimal rendering with `digits` significant digits, used by reports.
pub fn to_decimal_string(x: &Rational, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), to_f64(x))
}

pub(crate) fn max_ref<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Binomial coefficient as a big integer; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 3), BigInt::from(220));
        assert_eq!(binomial(12, 6), BigInt::from(924));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        assert!(to_f64(&big).is_infinite());
        let x = Rational::new(BigInt::from(10).pow(300) * 3, BigInt::from(10).pow(300));
        assert_eq!(to_f64(&x), 3.0);
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(200));
        assert!((to_f64(&tiny) - 1e-200).abs() < 1e-212);
    }
}
