use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int, to_f64, Rational};
use crate::error::{Error, Result};

/// Coefficient basis of a [`Polynomial`].
///
/// The Chebyshev basis carries its reference interval: coefficient `j`
/// multiplies `T_j(y)` with `y` the affine image of `x` from `[a, b]` onto
/// `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Monomial,
    Chebyshev { a: Rational, b: Rational },
}

impl Basis {
    pub fn chebyshev_on(a: Rational, b: Rational) -> Result<Self> {
        check_interval(&a, &b)?;
        Ok(Basis::Chebyshev { a, b })
    }

    /// The standard Chebyshev basis on `[-1, 1]`.
    pub fn chebyshev_unit() -> Self {
        Basis::Chebyshev {
            a: int(-1),
            b: int(1),
        }
    }
}

pub(crate) fn check_interval(a: &Rational, b: &Rational) -> Result<()> {
    if a < b {
        Ok(())
    } else {
        Err(Error::BadInterval {
            a: a.to_string(),
            b: b.to_string(),
        })
    }
}

/// Dense univariate polynomial with exact rational coefficients.
///
/// Coefficients are trimmed on construction, so the leading coefficient is
/// nonzero unless the polynomial is identically zero (stored as `[0]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    basis: Basis,
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(basis: Basis, coeffs: Vec<Rational>) -> Result<Self> {
        if let Basis::Chebyshev { a, b } = &basis {
            check_interval(a, b)?;
        }
        Ok(Self::from_parts(basis, coeffs))
    }

    pub(crate) fn from_parts(basis: Basis, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Polynomial { basis, coeffs }
    }

    pub fn monomial(coeffs: Vec<Rational>) -> Self {
        Self::from_parts(Basis::Monomial, coeffs)
    }

    /// Monomial polynomial from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::monomial(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::monomial(vec![])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("nonempty")
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        match &self.basis {
            Basis::Monomial => horner(&self.coeffs, x),
            Basis::Chebyshev { a, b } => clenshaw(&self.coeffs, &to_unit(x, a, b)),
        }
    }

    /// Floating-point value at `x`, for plotting and float-side solvers.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let c: Vec<f64> = self.coeffs.iter().map(to_f64).collect();
        match &self.basis {
            Basis::Monomial => c.iter().rev().fold(0.0, |acc, ci| acc * x + ci),
            Basis::Chebyshev { a, b } => {
                let (a, b) = (to_f64(a), to_f64(b));
                let y = (2.0 * x - a - b) / (b - a);
                let (mut b1, mut b2) = (0.0, 0.0);
                for ci in c.iter().skip(1).rev() {
                    let t = ci + 2.0 * y * b1 - b2;
                    b2 = b1;
                    b1 = t;
                }
                c[0] + y * b1 - b2
            }
        }
    }

    /// Same polynomial expressed in the monomial basis.
    pub fn to_monomial(&self) -> Polynomial {
        match &self.basis {
            Basis::Monomial => self.clone(),
            Basis::Chebyshev { a, b } => {
                // T_j(αx + β) built by the three-term recurrence directly in x.
                let width = b - a;
                let alpha = int(2) / &width;
                let beta = -(a + b) / &width;
                let map = vec![beta, alpha];
                let mut prev = vec![Rational::one()];
                let mut cur = map.clone();
                let mut out = vec![Rational::zero(); self.coeffs.len()];
                for (j, c) in self.coeffs.iter().enumerate() {
                    let tj = match j {
                        0 => &prev,
                        _ => &cur,
                    };
                    for (o, t) in out.iter_mut().zip(tj) {
                        *o += c * t;
                    }
                    if j >= 1 {
                        let mut next = mul_slices(&map, &cur);
                        for v in next.iter_mut() {
                            *v *= int(2);
                        }
                        for (n, p) in next.iter_mut().zip(&prev) {
                            *n -= p;
                        }
                        prev = std::mem::replace(&mut cur, next);
                    }
                }
                Polynomial::monomial(out)
            }
        }
    }

    /// Same polynomial expressed in the Chebyshev basis on `[a, b]`.
    pub fn to_chebyshev(&self, a: &Rational, b: &Rational) -> Result<Polynomial> {
        check_interval(a, b)?;
        if let Basis::Chebyshev { a: a0, b: b0 } = &self.basis {
            if a0 == a && b0 == b {
                return Ok(self.clone());
            }
        }
        // q(y) = p(x(y)) with x(y) = ((b - a) y + a + b) / 2, then Horner in
        // the Chebyshev basis using y·T_0 = T_1, y·T_j = (T_{j+1} + T_{j-1}) / 2.
        let half = super::rat(1, 2);
        let q = self
            .to_monomial()
            .compose_linear(&((b - a) * &half), &((a + b) * &half));
        let qc = q.coeffs();
        let mut acc: Vec<Rational> = vec![qc[qc.len() - 1].clone()];
        for ci in qc.iter().rev().skip(1) {
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (j, v) in acc.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if j == 0 {
                    next[1] += v;
                } else {
                    let h = v * &half;
                    next[j + 1] += &h;
                    next[j - 1] += h;
                }
            }
            next[0] += ci;
            acc = next;
        }
        Ok(Polynomial::from_parts(
            Basis::Chebyshev {
                a: a.clone(),
                b: b.clone(),
            },
            acc,
        ))
    }

    /// Re-express in the given basis.
    pub fn to_basis(&self, basis: &Basis) -> Result<Polynomial> {
        match basis {
            Basis::Monomial => Ok(self.to_monomial()),
            Basis::Chebyshev { a, b } => self.to_chebyshev(a, b),
        }
    }

    /// `p(alpha·x + beta)` in the monomial basis.
    pub fn compose_linear(&self, alpha: &Rational, beta: &Rational) -> Polynomial {
        let m = self.to_monomial();
        let d = m.coeffs.len() - 1;
        // Integer Horner over the common denominators of the input and of
        // alpha, beta; the result is divided back out at the end.
        let den = m.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let delta = alpha.denom().lcm(beta.denom());
        let lin = [
            beta.numer() * (&delta / beta.denom()),
            alpha.numer() * (&delta / alpha.denom()),
        ];
        let mut acc = vec![m.coeffs[d].numer() * (&den / m.coeffs[d].denom())];
        let mut power = BigInt::one();
        for c in m.coeffs[..d].iter().rev() {
            power *= &delta;
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, x) in acc.iter().enumerate() {
                next[i] += x * &lin[0];
                next[i + 1] += x * &lin[1];
            }
            next[0] += c.numer() * (&den / c.denom()) * &power;
            acc = next;
        }
        let total = den * power;
        Polynomial::monomial(
            acc.into_iter()
                .map(|x| Rational::new(x, total.clone()))
                .collect(),
        )
    }

    /// Formal derivative, returned in the same basis family. Chebyshev input
    /// goes through the monomial basis and back onto its own interval.
    pub fn derivative(&self) -> Polynomial {
        let m = self.to_monomial();
        let d: Vec<Rational> = m
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        let dm = Polynomial::monomial(d);
        match &self.basis {
            Basis::Monomial => dm,
            Basis::Chebyshev { a, b } => dm.to_chebyshev(a, b).expect("valid interval"),
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        Polynomial::from_parts(
            self.basis.clone(),
            self.coeffs.iter().map(|c| c * s).collect(),
        )
    }

    /// `self + c` for a constant `c` (T_0 = 1 in both bases).
    pub fn add_constant(&self, c: &Rational) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Polynomial::from_parts(self.basis.clone(), coeffs)
    }

    /// Sum; the result uses `self`'s basis when both agree, monomial otherwise.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (basis, a, b) = if self.basis == other.basis {
            (
                self.basis.clone(),
                self.coeffs.clone(),
                other.coeffs.clone(),
            )
        } else {
            (
                Basis::Monomial,
                self.to_monomial().coeffs,
                other.to_monomial().coeffs,
            )
        };
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let mut v = a.get(i).cloned().unwrap_or_else(Rational::zero);
                if let Some(bi) = b.get(i) {
                    v += bi;
                }
                v
            })
            .collect();
        Polynomial::from_parts(basis, out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&int(-1)))
    }

    /// Product in the monomial basis.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        Polynomial::monomial(mul_slices(
            &self.to_monomial().coeffs,
            &other.to_monomial().coeffs,
        ))
    }

    /// Composition with the affine map sending `[a, b]` onto `[-1, 1]`:
    /// the result `q` satisfies `q(x) = p(L(x))`, `L(x) = (2x - a - b)/(b - a)`.
    ///
    /// Degree is preserved. A Chebyshev-basis input keeps its coefficients
    /// and moves its reference interval to the preimage under `L`.
    pub fn affine_compose(&self, a: &Rational, b: &Rational) -> Result<Polynomial> {
        check_interval(a, b)?;
        let width = b - a;
        match &self.basis {
            Basis::Monomial => {
                let alpha = int(2) / &width;
                let beta = -(a + b) / &width;
                Ok(self.compose_linear(&alpha, &beta))
            }
            Basis::Chebyshev { a: c, b: e } => {
                // L^{-1}(y) = ((b - a) y + a + b) / 2 is increasing.
                let inv = |y: &Rational| (&width * y + a + b) / int(2);
                Ok(Polynomial::from_parts(
                    Basis::Chebyshev {
                        a: inv(c),
                        b: inv(e),
                    },
                    self.coeffs.clone(),
                ))
            }
        }
    }

    /// Largest coefficient magnitude, a crude size measure for reports.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match &self.basis {
            Basis::Monomial => "x^",
            Basis::Chebyshev { .. } => "T",
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(self.is_zero() && i == 0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){sym}{i}")?;
        }
        if let Basis::Chebyshev { a, b } = &self.basis {
            write!(f, " on [{a}, {b}]")?;
        }
        Ok(())
    }
}

pub(crate) fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn clenshaw(coeffs: &[Rational], y: &Rational) -> Rational {
    let two_y = y * int(2);
    let mut b1 = Rational::zero();
    let mut b2 = Rational::zero();
    for c in coeffs.iter().skip(1).rev() {
        let t = c + &two_y * &b1 - &b2;
        b2 = std::mem::replace(&mut b1, t);
    }
    &coeffs[0] + y * b1 - b2
}

fn to_unit(x: &Rational, a: &Rational, b: &Rational) -> Rational {
    (x * int(2) - a - b) / (b - a)
}

pub(crate) fn mul_slices(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{chebyshev, rat};

    #[test]
    fn eval_examples() {
        let t2 = Polynomial::from_ints(&[-1, 0, 2]);
        assert_eq!(t2.eval(&rat(1, 2)), rat(-1, 2));
        assert_eq!(Polynomial::constant(int(7)).eval(&rat(-13, 5)), int(7));
        assert_eq!(chebyshev(3).eval(&int(2)), int(26));
    }

    #[test]
    fn trimming_and_zero() {
        let p = Polynomial::monomial(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), 0);
        assert!(Polynomial::zero().is_zero());
        assert_eq!(Polynomial::zero().degree(), 0);
    }

    #[test]
    fn derivative_examples() {
        assert!(Polynomial::constant(int(5)).derivative().is_zero());
        assert_eq!(
            Polynomial::from_ints(&[0, 0, 1]).derivative(),
            Polynomial::from_ints(&[0, 2])
        );
        assert_eq!(chebyshev(4).derivative().eval(&int(1)), int(16));
    }

    #[test]
    fn chebyshev_basis_roundtrip_and_eval() {
        let p = Polynomial::from_ints(&[3, -1, 4, 1, -5]);
        let c = p.to_chebyshev(&rat(-1, 3), &int(2)).unwrap();
        assert_eq!(c.to_monomial(), p);
        for x in [rat(-1, 3), rat(1, 7), int(2), int(5)] {
            assert_eq!(c.eval(&x), p.eval(&x));
        }
        let dc = c.derivative();
        assert!(matches!(dc.basis(), Basis::Chebyshev { .. }));
        assert_eq!(dc.to_monomial(), p.derivative());
    }

    #[test]
    fn affine_compose_examples() {
        let x = Polynomial::x();
        assert_eq!(
            x.affine_compose(&int(0), &int(2)).unwrap(),
            Polynomial::from_ints(&[-1, 1])
        );
        let t2 = chebyshev(2);
        assert_eq!(t2.affine_compose(&int(-1), &int(1)).unwrap(), t2);
        let q = x.affine_compose(&int(0), &int(1)).unwrap();
        assert_eq!(q.eval(&int(1)), int(1));
        assert!(x.affine_compose(&int(1), &int(1)).is_err());
    }

    #[test]
    fn affine_compose_chebyshev_moves_interval() {
        let p = chebyshev(5).to_chebyshev(&int(-1), &int(1)).unwrap();
        let q = p.affine_compose(&int(0), &rat(1, 3)).unwrap();
        assert_eq!(
            q.basis(),
            &Basis::Chebyshev {
                a: int(0),
                b: rat(1, 3)
            }
        );
        let m = chebyshev(5).affine_compose(&int(0), &rat(1, 3)).unwrap();
        for x in [int(0), rat(1, 9), rat(1, 3), int(2)] {
            assert_eq!(q.eval(&x), m.eval(&x));
        }
    }

    #[test]
    fn float_eval_matches() {
        let p = Polynomial::from_ints(&[1, -2, 0, 3]);
        let c = p.to_chebyshev(&int(0), &int(4)).unwrap();
        for x in [0.0, 0.3, 1.7, 4.0] {
            assert!((p.eval_f64(x) - c.eval_f64(x)).abs() < 1e-12);
        }
    }
}
