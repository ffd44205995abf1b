// Dense polynomials over F_p, low degree first. Only what the irreducibility
// tests need.

use super::nt::{factorize, pow_mod};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = pow_mod(f[df], p - 2, p);
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        let shift = top - df;
        for (i, &fi) in f.iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - c) * fi) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Root test; decides irreducibility only for degree 2 and 3.
pub(crate) fn has_no_roots(f: &[u64], p: u64) -> bool {
    (0..p).all(|r| f.iter().rev().fold(0, |acc, &c| (acc * r + c) % p) != 0)
}

/// Rabin's test: `f` of degree n is irreducible iff `t^(p^n) = t mod f` and
/// `gcd(t^(p^(n/r)) - t, f) = 1` for every prime `r | n`.
pub(crate) fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let t = rem(&[0, 1], f, p);
    // frob[i] = t^(p^i) mod f
    let mut frob = vec![t.clone()];
    for i in 0..n {
        let next = pow_poly_mod(&frob[i], p, f, p);
        frob.push(next);
    }
    if frob[n] != t {
        return false;
    }
    factorize(n as u64).into_iter().all(|(r, _)| {
        let h = sub(&frob[n / r as usize], &t, p);
        gcd(&h, f, p).len() == 1
    })
}

/// `f` is a full coefficient list, low degree first, leading coefficient last.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    match f.len() {
        0 | 1 => false,
        2 => true,
        3 | 4 => has_no_roots(f, p),
        _ => rabin_irreducible(f, p),
    }
}
