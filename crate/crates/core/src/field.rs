//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact, computable field.
pub trait Field: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Send + Sync + 'static {
    /// Characteristic of the field (0 for the rationals).
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Parses `n` or `p/q`.
    fn parse(s: &str) -> Option<Self>;
    /// Distinct roots in the field of a polynomial (coefficients low degree
    /// first), or `None` when the search gives up.
    fn roots(poly: &[Self]) -> Option<Vec<Self>>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// `dst -= factor * src`, entrywise.
    fn sub_scaled(dst: &mut [Self], factor: &Self, src: &[Self]) {
        for (x, p) in dst.iter_mut().zip(src) {
            if !p.is_zero() {
                *x = x.sub(&factor.mul(p));
            }
        }
    }
}

/// Rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(n, d)))
    }
    fn roots(poly: &[Self]) -> Option<Vec<Self>> {
        rational_roots(poly)
    }
}

/// Largest integer whose divisors are enumerated by trial division.
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n: u64 = n.abs().try_into().ok()?;
    if n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn rational_roots(poly: &[Rational]) -> Option<Vec<Rational>> {
    let mut p = crate::poly::trim(poly.to_vec());
    let mut out = Vec::new();
    if p.len() <= 1 {
        return Some(out);
    }
    if p[0].is_zero() {
        out.push(Rational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() == 1 {
        return Some(out);
    }
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (&c.0 * &lcm).to_integer()).collect();
    let lead = divisors(ints.last().unwrap())?;
    let constant = divisors(&ints[0])?;
    let as_rat: Vec<Rational> = ints
        .iter()
        .map(|c| Rational(BigRational::from_integer(c.clone())))
        .collect();
    for &q in &lead {
        for &num in &constant {
            for sign in [1i64, -1] {
                let cand = Rational(BigRational::new(
                    BigInt::from(num) * BigInt::from(sign),
                    BigInt::from(q),
                ));
                if !out.contains(&cand) && crate::poly::eval(&as_rat, &cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    Some(out)
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// Residue class modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// The Mersenne prime 2^31 - 1.
pub type F2147483647 = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let (s, over) = self.0.overflowing_add(rhs.0);
        Fp(if over || s >= P { s.wrapping_sub(P) } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            P - (rhs.0 - self.0)
        })
    }
    fn mul(&self, rhs: &Self) -> Self {
        if P <= 1 << 32 {
            Fp(self.0 * rhs.0 % P)
        } else {
            Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
        }
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }
    fn sub_scaled(dst: &mut [Self], factor: &Self, src: &[Self]) {
        let f = factor.neg();
        if P <= 1 << 31 {
            for (x, p) in dst.iter_mut().zip(src) {
                x.0 = (x.0 + f.0 * p.0) % P;
            }
        } else {
            for (x, p) in dst.iter_mut().zip(src) {
                *x = x.add(&f.mul(p));
            }
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = Self::new(n.trim().parse().ok()?);
                let d = Self::new(d.trim().parse().ok()?);
                n.div(&d)
            }
            None => Some(Self::new(s.parse().ok()?)),
        }
    }
    fn roots(poly: &[Self]) -> Option<Vec<Self>> {
        let p = crate::poly::trim(poly.to_vec());
        if p.len() <= 1 {
            return Some(Vec::new());
        }
        if P <= 4096 {
            let all = (0..P).map(Fp);
            return Some(all.filter(|x| crate::poly::eval(&p, x).is_zero()).collect());
        }
        // gcd with t^P - t keeps exactly the linear factors
        let t = vec![Fp(0), Fp(1)];
        let mut tp = crate::poly::pow_mod(&t, P, &p);
        tp.resize(tp.len().max(2), Fp(0));
        tp[1] = tp[1].sub(&Fp(1));
        let g = crate::poly::gcd(&p, &tp);
        let mut out = Vec::new();
        let zero_root = crate::poly::eval(&g, &Fp(0)).is_zero();
        let g = if zero_root {
            out.push(Fp(0));
            crate::poly::quotient(&g, &t)
        } else {
            g
        };
        crate::poly::split_linear_factors(g, P, 1, &mut out);
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let r = Rational::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(Rational::parse("10/5").unwrap(), Rational::from_i64(2));
        assert!(Rational::parse("1/0").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        type F7 = Fp<7>;
        for v in 1..7 {
            let x = F7::new(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert_eq!(F7::new(-1).value(), 6);
        assert_eq!(F7::parse("1/2").unwrap(), F7::new(4));
    }
}
