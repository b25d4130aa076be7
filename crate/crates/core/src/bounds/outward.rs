//! Directed-rounding fixed-point evaluation of `sqrt` and `exp`.
//!
//! Values are carried as integers scaled by `2^P`. Every rounding step goes
//! the same direction, so `*_up` results are true upper bounds and `*_down`
//! results true lower bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

fn div_ceil(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_ceil(d)
}

fn ceil_fixed(x: &Rational, p: usize) -> BigInt {
    div_ceil(&(x.numer() << p), x.denom())
}

fn floor_fixed(x: &Rational, p: usize) -> BigInt {
    (x.numer() << p).div_floor(x.denom())
}

fn from_fixed(v: BigInt, p: usize) -> Rational {
    Rational::new(v, BigInt::one() << p)
}

/// Upper bound on `sqrt(x)` within `2^-bits`. Requires `x ≥ 0`.
pub fn sqrt_up(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative value");
    let p = bits as usize + 2;
    // sqrt(n/m) = sqrt(n·m)/m; scale the radicand by 4^p.
    let radicand = (x.numer() * x.denom()) << (2 * p);
    let mut s = radicand.sqrt();
    if &s * &s < radicand {
        s += 1;
    }
    Rational::new(s, x.denom() << p)
}

/// Lower bound on `sqrt(x)` within `2^-bits`. Requires `x ≥ 0`.
pub fn sqrt_down(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative value");
    let p = bits as usize + 2;
    let radicand = (x.numer() * x.denom()) << (2 * p);
    Rational::new(radicand.sqrt(), x.denom() << p)
}

/// Halvings needed so that `x / 2^k ≤ 1/2`.
fn reduction(x: &Rational) -> usize {
    let ceil = x.ceil().to_integer();
    if ceil.is_zero() {
        0
    } else {
        ceil.bits() as usize + 1
    }
}

/// Upper bound on `exp(x)` for `x ≥ 0`, relative error about `2^-bits`.
pub fn exp_up(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "exp_up expects x ≥ 0");
    let k = reduction(x);
    let p = bits as usize + k + 32;
    let one = BigInt::one() << p;
    let z = div_ceil(&ceil_fixed(x, p), &(BigInt::one() << k));
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut i = 1u64;
    loop {
        term = div_ceil(&(&term * &z), &(&one * BigInt::from(i)));
        sum += &term;
        if term <= BigInt::one() {
            break;
        }
        i += 1;
    }
    // z ≤ 1/2 makes the tail geometric with ratio ≤ 1/2: bounded by the last term.
    sum += &term + 1;
    for _ in 0..k {
        sum = div_ceil(&(&sum * &sum), &one);
    }
    from_fixed(sum, p)
}

/// Lower bound on `exp(x)` for `x ≥ 0`.
pub fn exp_down(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "exp_down expects x ≥ 0");
    let k = reduction(x);
    let p = bits as usize + k + 32;
    let one = BigInt::one() << p;
    let z = floor_fixed(x, p) >> k;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut i = 1u64;
    while !term.is_zero() {
        term = (&term * &z) / (&one * BigInt::from(i));
        sum += &term;
        i += 1;
    }
    for _ in 0..k {
        sum = (&sum * &sum) >> p;
    }
    from_fixed(sum, p)
}
