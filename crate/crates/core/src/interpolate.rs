//! Lagrange interpolation over `F_q`: the unique polynomial of degree `< q`
//! representing a total map.
//!
//! Uses the delta form `f(x) = sum_a f(a) * (1 - (x - a)^(q-1))`, expanding
//! `(x - a)^(q-1)` binomially with coefficients reduced mod `p` by Lucas.
//! Quadratic in `q`, which is fine at the sizes this crate deals with.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{nt, Elem, ElemRepr, FieldCtx};
use crate::permlab::PermMap;
use crate::poly::SparsePoly;

/// Dense coefficient vector, `coeffs[i]` multiplying `x^i`. Always length `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<Elem>,
}

impl DensePoly {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn to_repr(&self, ctx: &FieldCtx) -> DenseRepr {
        DenseRepr(self.coeffs.iter().map(|c| ctx.repr(c)).collect())
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct DenseRepr(pub Vec<ElemRepr>);

// C(n, k) mod p by Lucas' theorem.
fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // small binomial via multiplicative formula mod p
        let mut num = 1;
        let mut den = 1;
        for i in 0..ki {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        acc = acc * num % p * nt::pow_mod(den, p - 2, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

pub fn lagrange(ctx: &FieldCtx, map: &PermMap) -> Result<DensePoly> {
    let q = ctx.q() as usize;
    if map.len() != q {
        return Err(Error::MapSizeMismatch {
            expected: q,
            got: map.len(),
        });
    }
    let top = q - 1;
    let binom: Vec<u64> = (0..=top as u64)
        .map(|j| binom_mod_p(top as u64, j, ctx.p()))
        .collect();

    // sums[t] = sum_a f(a) * (-a)^t, accumulated by walking t upward per point
    let mut sums = vec![ctx.zero(); q];
    for (a_idx, a) in ctx.elements().enumerate() {
        let value = ctx.from_index(map.image(a_idx) as u64)?;
        if value.is_zero() {
            continue;
        }
        let minus_a = ctx.neg(&a);
        let mut w = value;
        for (t, sum) in sums.iter_mut().enumerate() {
            *sum = ctx.add(sum, &w);
            if t < top {
                w = ctx.mul(&w, &minus_a);
                if w.is_zero() {
                    break;
                }
            }
        }
    }
    // f(x) = sum_a f(a) - sum_j C(q-1, j) sums[q-1-j] x^j
    let total = sums[0].clone();
    let mut coeffs: Vec<Elem> = (0..=top)
        .map(|j| ctx.neg(&ctx.mul_scalar(&sums[top - j], binom[j])))
        .collect();
    coeffs[0] = ctx.add(&coeffs[0], &total);
    Ok(DensePoly { coeffs })
}

pub fn to_sparse(dense: &DensePoly) -> SparsePoly {
    let terms = dense
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, c.clone()))
        .collect();
    SparsePoly::from_normal_terms(terms)
}

/// Syntactic equality of normalized term lists.
pub fn canonical_equal(a: &SparsePoly, b: &SparsePoly) -> bool {
    a.terms() == b.terms()
}
