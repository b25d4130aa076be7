//! Exact real-root counting for rational polynomials, used to certify that
//! a candidate rational value is the exact extremum of a polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Integer coefficients, lowest degree first.
type Poly = Vec<BigInt>;

fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    if a.is_empty() {
        a.push(BigInt::zero());
    }
    a
}

fn is_zero(a: &Poly) -> bool {
    a.len() == 1 && a[0].is_zero()
}

fn lead(a: &Poly) -> &BigInt {
    a.last().expect("nonempty")
}

/// Positive multiple with coprime coefficients.
fn primitive(a: Poly) -> Poly {
    let a = trim(a);
    if is_zero(&a) {
        return a;
    }
    // Start from the shortest coefficient and stop once the content is one.
    let mut g = a
        .iter()
        .filter(|n| !n.is_zero())
        .min_by_key(|n| n.bits())
        .expect("nonzero")
        .abs();
    for n in &a {
        if g.is_one() {
            return a;
        }
        g = g.gcd(n);
    }
    if g.is_one() {
        return a;
    }
    a.into_iter().map(|n| n / &g).collect()
}

/// Clears denominators of a rational polynomial.
fn from_rational(f: &[Rational]) -> Poly {
    from_rational_scaled(f).0
}

/// `(D·f, D)` with `D` the least common denominator.
fn from_rational_scaled(f: &[Rational]) -> (Poly, BigInt) {
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let p = trim(f.iter().map(|c| c.numer() * (&den / c.denom())).collect());
    (p, den)
}

fn deriv(a: &Poly) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Positive multiple of the remainder of `a` by `b`: each step scales by
/// `|lead(b)|`, so signs match the rational remainder.
fn prem(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    let lb = lead(b);
    let (scale, sign) = (lb.abs(), lb.signum());
    let mut r = a.clone();
    while r.len() > db && !is_zero(&r) {
        let k = r.len() - 1 - db;
        let c = lead(&r) * &sign;
        for x in r.iter_mut() {
            *x *= &scale;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        r.pop();
        r = trim(r);
        if db == 0 {
            return vec![BigInt::zero()];
        }
    }
    r
}

/// `a / b` when `b` divides `a` with an integer quotient.
fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    if a.len() <= db {
        return vec![BigInt::zero()];
    }
    let lb = lead(b);
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / lb;
        debug_assert!((&c * lb) == r[i + db], "inexact polynomial division");
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    trim(q)
}

/// Primitive gcd, up to sign.
fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (primitive(a.clone()), primitive(b.clone()));
    while !is_zero(&y) {
        let r = primitive(prem(&x, &y));
        x = std::mem::replace(&mut y, r);
    }
    x
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Product of the squarefree factors of odd multiplicity (Yun), given the
/// primitive `f`, its derivative `fp` and `g = gcd(f, fp)`.
fn odd_part(f: &Poly, fp: &Poly, g: &Poly) -> Poly {
    let mut out = vec![BigInt::one()];
    let mut c = exact_div(f, g);
    let mut d = sub(&exact_div(fp, g), &deriv(&c));
    let mut mult = 1usize;
    while c.len() > 1 {
        let a = gcd(&c, &d);
        let c_next = exact_div(&c, &a);
        let d_next = sub(&exact_div(&d, &a), &deriv(&c_next));
        if mult % 2 == 1 && a.len() > 1 {
            out = primitive(mul(&out, &a));
        }
        c = c_next;
        d = d_next;
        mult += 1;
    }
    out
}

fn sturm_chain(g: &Poly) -> Vec<Poly> {
    let mut chain = vec![primitive(g.clone()), primitive(deriv(g))];
    loop {
        let n = chain.len();
        if is_zero(&chain[n - 1]) {
            chain.pop();
            break;
        }
        let r = prem(&chain[n - 2], &chain[n - 1]);
        if is_zero(&r) {
            break;
        }
        chain.push(primitive(r.iter().map(|c| -c).collect()));
    }
    chain
}

/// `(den^n·p(x), den^n)` for `x = num/den`, `n = deg p`.
fn eval_scaled(p: &Poly, x: &Rational) -> (BigInt, BigInt) {
    let (num, den) = (x.numer(), x.denom());
    let n = p.len() - 1;
    let mut acc = p[n].clone();
    let mut den_pow = BigInt::one();
    for c in p[..n].iter().rev() {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    (acc, den_pow)
}

/// Sign of `p(x)` for rational `x`.
fn sign_at(p: &Poly, x: &Rational) -> i8 {
    let acc = eval_scaled(p, x).0;
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(chain: &[Poly], x: &Rational) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

enum Touch {
    No,
    At(Rational),
    /// Sturm chain of the squarefree part, which has a root in `(a, b)`.
    Inside(Vec<Poly>),
}

fn touch(f: &Poly, a: &Rational, b: &Rational) -> Touch {
    let (fa, fb) = (sign_at(f, a), sign_at(f, b));
    if fa < 0 || fb < 0 {
        return Touch::No;
    }
    let f = primitive(f.clone());
    // The chain of f ends in gcd(f, f'); a constant there means f is
    // squarefree and the chain serves every count below.
    let chain = sturm_chain(&f);
    let g = chain.last().expect("nonempty chain").clone();
    let (odd_chain, sf_chain) = if g.len() == 1 {
        (chain.clone(), chain)
    } else {
        let fp = deriv(&f);
        let odd = odd_part(&f, &fp, &g);
        let square_free = exact_div(&f, &g);
        let odd_chain = if odd.len() > 1 { sturm_chain(&odd) } else { vec![odd] };
        (odd_chain, sturm_chain(&square_free))
    };
    let count = |c: &[Poly]| {
        if c[0].len() <= 1 {
            0
        } else {
            variations(c, a).saturating_sub(variations(c, b))
        }
    };
    let open_roots = count(&odd_chain) - usize::from(sign_at(&odd_chain[0], b) == 0);
    if open_roots > 0 {
        return Touch::No;
    }
    // No sign change inside, so one nonzero sample fixes the sign.
    let mut probe = fa;
    if probe == 0 {
        probe = fb;
    }
    if probe == 0 {
        probe = sign_at(&f, &((a + b) / Rational::from_integer(2.into())));
    }
    if probe < 0 {
        return Touch::No;
    }
    if fa == 0 {
        return Touch::At(a.clone());
    }
    if fb == 0 {
        return Touch::At(b.clone());
    }
    if count(&sf_chain) > 0 {
        Touch::Inside(sf_chain)
    } else {
        Touch::No
    }
}

/// True when `f ≥ 0` on `[a, b]` and `f` vanishes somewhere in `[a, b]`.
pub(crate) fn touches_zero_from_above(f: &[Rational], a: &Rational, b: &Rational) -> bool {
    let f = from_rational(f);
    if is_zero(&f) {
        return true;
    }
    f.len() > 1 && !matches!(touch(&f, a, b), Touch::No)
}

/// Like [`touches_zero_from_above`], returning a point where `|f| ≤ tol`.
pub(crate) fn touch_point(f: &[Rational], a: &Rational, b: &Rational, tol: &Rational) -> Option<Rational> {
    const MAX_STEPS: usize = 400;
    let (f, den) = from_rational_scaled(f);
    if is_zero(&f) {
        return Some(a.clone());
    }
    if f.len() == 1 {
        return None;
    }
    let chain = match touch(&f, a, b) {
        Touch::No => return None,
        Touch::At(x) => return Some(x),
        Touch::Inside(chain) => chain,
    };
    // |F(x)| ≤ tol·D with F = D·f
    let bound = &den * tol.numer();
    let accept = |x: &Rational| {
        let (v, scale) = eval_scaled(&f, x);
        v.abs() * tol.denom() <= &bound * scale
    };
    let two = Rational::from_integer(2.into());
    let (mut l, mut r) = (a.clone(), b.clone());
    let mut vl = variations(&chain, &l);
    for _ in 0..MAX_STEPS {
        let mid = (&l + &r) / &two;
        if accept(&mid) {
            return Some(mid);
        }
        let vm = variations(&chain, &mid);
        if vl > vm {
            r = mid;
        } else {
            l = mid;
            vl = vm;
        }
    }
    accept(&r).then_some(r)
}

/// The rational with the smallest denominator in the closed interval `[x, y]`.
pub(crate) fn simplest_between(x: &Rational, y: &Rational) -> Rational {
    debug_assert!(x <= y);
    if y.is_negative() {
        return -simplest_between(&-y, &-x);
    }
    if !x.is_positive() {
        return Rational::zero();
    }
    // Continued-fraction terms of the simplest value in [p/q, r/s].
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let (mut r, mut s) = (y.numer().clone(), y.denom().clone());
    let mut terms = Vec::new();
    loop {
        let (n, rem) = p.div_rem(&q);
        let c = if rem.is_zero() { n.clone() } else { &n + 1 };
        if &c * &s <= r {
            terms.push(c);
            break;
        }
        terms.push(n.clone());
        // (x, y) <- (1/(y - n), 1/(x - n))
        let (np, nq) = (s.clone(), &r - &n * &s);
        r = q.clone();
        s = rem;
        p = np;
        q = nq;
    }
    let (mut h, mut k) = (BigInt::one(), BigInt::zero());
    for t in terms.iter().rev() {
        let nh = t * &h + &k;
        k = h;
        h = nh;
    }
    Rational::new(h, k)
}
