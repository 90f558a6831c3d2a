//! Univariate polynomials over a [`Field`], coefficients low degree first.

use crate::field::Field;

pub(crate) fn trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(F::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn monic<F: Field>(p: Vec<F>) -> Vec<F> {
    let p = trim(p);
    match p.last() {
        None => p,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero leading coefficient");
            p.iter().map(|c| c.mul(&inv)).collect()
        }
    }
}

/// Remainder of `a` modulo the nonzero polynomial `b`.
pub(crate) fn rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = b.last().expect("division by zero polynomial").inv().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&c.mul(bi));
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

pub(crate) fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

/// `base^e mod m`.
pub(crate) fn pow_mod<F: Field>(base: &[F], mut e: u64, m: &[F]) -> Vec<F> {
    let mut acc = vec![F::one()];
    let mut b = rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b), m);
        }
        b = rem(&mul(&b, &b), m);
        e >>= 1;
    }
    acc
}

pub(crate) fn eval<F: Field>(p: &[F], x: &F) -> F {
    p.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
}

/// Distinct roots of a product of distinct linear factors over `F_P`
/// (odd `P`), split by gcds with `(t + a)^((P-1)/2) - 1`.
pub(crate) fn split_linear_factors<F: Field>(g: Vec<F>, p: u64, shift: i64, out: &mut Vec<F>) {
    let g = monic(g);
    match g.len() {
        0 | 1 => {}
        2 => out.push(g[0].neg()),
        _ => {
            let mut a = shift;
            loop {
                let base = vec![F::from_i64(a), F::one()];
                let mut h = pow_mod(&base, (p - 1) / 2, &g);
                if h.is_empty() {
                    h.push(F::zero());
                }
                h[0] = h[0].sub(&F::one());
                let d = gcd(&g, &h);
                if d.len() > 1 && d.len() < g.len() {
                    let other = quotient(&g, &d);
                    split_linear_factors(d, p, a + 1, out);
                    split_linear_factors(other, p, a + 1, out);
                    return;
                }
                a += 1;
            }
        }
    }
}

/// Exact quotient `a / b`.
pub(crate) fn quotient<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return Vec::new();
    }
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![F::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&c.mul(bi));
        }
        q[shift] = c;
        r = trim(r);
    }
    trim(q)
}
