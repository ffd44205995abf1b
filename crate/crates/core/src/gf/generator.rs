use std::collections::HashMap;

use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// A field together with a chosen primitive element `gamma`, the cube root of
/// unity `omega = gamma^m`, and a baby-step table for discrete logarithms.
///
/// Cosets are indexed so that coset `j` is `gamma^j * H`, where `H` is the
/// subgroup of nonzero cubes.
#[derive(Debug, Clone)]
pub struct GeneratorCtx {
    field: FieldCtx,
    gamma: Elem,
    omega: Elem,
    omega_sq: Elem,
    m: u64,
    baby_steps: HashMap<u64, u64>,
    stride: u64,
    giant_step: Elem,
}

impl GeneratorCtx {
    pub fn new(field: FieldCtx, gamma: Elem) -> Result<Self> {
        let m = match field.m() {
            Some(m) if field.supports_families() => m,
            _ => return Err(Error::UnsupportedField { q: field.q() }),
        };
        if gamma.coeffs().len() != field.n() || !field.is_generator(&gamma) {
            return Err(Error::NotGenerator(field.repr(&gamma).to_string()));
        }
        let omega = field.pow_u64(&gamma, m);
        let omega_sq = field.mul(&omega, &omega);

        let group = field.q() - 1;
        let stride = (group as f64).sqrt().ceil() as u64;
        let mut baby_steps = HashMap::with_capacity(stride as usize);
        let mut cur = field.one();
        for j in 0..stride {
            baby_steps.entry(field.index(&cur)).or_insert(j);
            cur = field.mul(&cur, &gamma);
        }
        let giant_step = field.pow_u64(&field.inv(&gamma)?, stride);

        Ok(GeneratorCtx {
            field,
            gamma,
            omega,
            omega_sq,
            m,
            baby_steps,
            stride,
            giant_step,
        })
    }

    /// Context for the canonical (smallest) generator.
    pub fn canonical(field: FieldCtx) -> Result<Self> {
        if !field.supports_families() {
            return Err(Error::UnsupportedField { q: field.q() });
        }
        let gamma = field.find_generator();
        GeneratorCtx::new(field, gamma)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn gamma(&self) -> &Elem {
        &self.gamma
    }

    pub fn omega(&self) -> &Elem {
        &self.omega
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `gamma^e`, any integer exponent.
    pub fn gamma_pow(&self, e: i64) -> Elem {
        let group = (self.field.q() - 1) as i64;
        self.field.pow_u64(&self.gamma, e.rem_euclid(group) as u64)
    }

    /// Baby-step/giant-step discrete logarithm base `gamma`, in `[0, q-2]`.
    pub fn dlog(&self, x: &Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        let mut cur = x.clone();
        for i in 0..=self.stride {
            if let Some(&j) = self.baby_steps.get(&f.index(&cur)) {
                return Ok((i * self.stride + j) % (f.q() - 1));
            }
            cur = f.mul(&cur, &self.giant_step);
        }
        unreachable!("gamma generates F_q^*, so every nonzero element has a logarithm")
    }

    /// The `j` with `x` in `gamma^j * H`, read off from `x^m`.
    pub fn coset_index(&self, x: &Elem) -> Result<u8> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let c = self.field.pow_u64(x, self.m);
        if c == self.field.one() {
            Ok(0)
        } else if c == self.omega {
            Ok(1)
        } else {
            debug_assert_eq!(c, self.omega_sq);
            Ok(2)
        }
    }
}
