//! Exact arithmetic in `F_q`, `q = p^n`.
//!
//! Extension fields are represented as `F_p[t] / (f)` where `f` is the
//! smallest monic irreducible of degree `n` when its low coefficients are
//! read as a base-`p` integer. Elements are coefficient vectors in the same
//! order, which also gives every element a canonical index in `[0, q)`.

mod fpoly;
mod generator;
pub mod nt;

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use generator::GeneratorCtx;

const MAX_ORDER: u64 = 1 << 32;

/// A field element: coefficient of `t^i` at position `i`, each in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    coeffs: SmallVec<[u64; 4]>,
}

impl Elem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs.as_slice())
        }
    }
}

/// Serialized element: a decimal integer in a prime field, a digit list
/// `[c0, .., c_{n-1}]` in an extension field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Scalar(u64),
    Digits(Vec<u64>),
}

impl fmt::Display for ElemRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemRepr::Scalar(v) => write!(f, "{v}"),
            ElemRepr::Digits(d) => {
                let parts: Vec<String> = d.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    n: usize,
    q: u64,
    m: Option<u64>,
    // full monic modulus, low degree first; None for prime fields
    modulus: Option<Vec<u64>>,
}

/// Builds `F_{p^n}` with the canonical (smallest) monic irreducible modulus.
pub fn build_field(p: u64, n: u32) -> Result<FieldCtx> {
    let q = check_order(p, n)?;
    if n == 1 {
        return Ok(FieldCtx::assemble(p, 1, q, None));
    }
    let low_count = p.pow(n);
    for v in 0..low_count {
        let mut f = digits(v, p, n as usize);
        f.push(1);
        if fpoly::is_irreducible(&f, p) {
            return Ok(FieldCtx::assemble(p, n as usize, q, Some(f)));
        }
    }
    Err(Error::NoIrreducible { p, n })
}

/// Builds the field of order `q`, which must be a prime power.
pub fn build_field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, n) = nt::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    build_field(p, n)
}

fn check_order(p: u64, n: u32) -> Result<u64> {
    if !nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let lazy_ok = (p - 1)
        .checked_mul(p - 1)
        .and_then(|sq| sq.checked_mul(n as u64 + 1))
        .is_some();
    match p.checked_pow(n) {
        Some(q) if q <= MAX_ORDER && lazy_ok => Ok(q),
        _ => Err(Error::FieldTooLarge { p, n }),
    }
}

fn digits(mut v: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..n {
        out.push(v % p);
        v /= p;
    }
    out
}

impl FieldCtx {
    fn assemble(p: u64, n: usize, q: u64, modulus: Option<Vec<u64>>) -> Self {
        let m = (q % 3 == 1).then(|| (q - 1) / 3);
        FieldCtx { p, n, q, m, modulus }
    }

    /// Builds `F_p[t] / (modulus)` from a user-supplied monic modulus given
    /// low degree first. The modulus is checked for irreducibility.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidModulus {
            p,
            reason: reason.to_string(),
        };
        if modulus.len() < 2 {
            return Err(bad("degree must be at least 1"));
        }
        let n = (modulus.len() - 1) as u32;
        let q = check_order(p, n)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(bad("coefficient out of range"));
        }
        if modulus[modulus.len() - 1] != 1 {
            return Err(bad("not monic"));
        }
        if n == 1 {
            return Ok(FieldCtx::assemble(p, 1, q, None));
        }
        if !fpoly::is_irreducible(modulus, p) {
            return Err(bad("reducible"));
        }
        Ok(FieldCtx::assemble(p, n as usize, q, Some(modulus.to_vec())))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(q - 1) / 3`, present only when `q = 1 (mod 3)`.
    pub fn m(&self) -> Option<u64> {
        self.m
    }

    /// Full monic modulus, low degree first. `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Whether the involution families can be built over this field.
    pub fn supports_families(&self) -> bool {
        self.q % 2 == 1 && self.m.is_some()
    }

    pub fn zero(&self) -> Elem {
        Elem {
            coeffs: SmallVec::from_elem(0, self.n),
        }
    }

    pub fn one(&self) -> Elem {
        self.scalar(1)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn scalar(&self, v: i64) -> Elem {
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "{coeffs:?} is not a vector of {} residues mod {}",
                self.n, self.p
            )));
        }
        Ok(Elem {
            coeffs: SmallVec::from_slice(coeffs),
        })
    }

    /// Element with canonical index `idx` (its coefficient vector read in base `p`).
    pub fn from_index(&self, idx: u64) -> Result<Elem> {
        if idx >= self.q {
            return Err(Error::InvalidElement(format!(
                "index {idx} out of range for F_{}",
                self.q
            )));
        }
        Ok(self.elem_at(idx))
    }

    fn elem_at(&self, mut idx: u64) -> Elem {
        let mut coeffs = SmallVec::with_capacity(self.n);
        for _ in 0..self.n {
            coeffs.push(idx % self.p);
            idx /= self.p;
        }
        Elem { coeffs }
    }

    pub fn index(&self, x: &Elem) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(move |i| self.elem_at(i))
    }

    pub fn repr(&self, x: &Elem) -> ElemRepr {
        if self.n == 1 {
            ElemRepr::Scalar(x.coeffs[0])
        } else {
            ElemRepr::Digits(x.coeffs.to_vec())
        }
    }

    pub fn parse_repr(&self, r: &ElemRepr) -> Result<Elem> {
        match r {
            ElemRepr::Scalar(v) if self.n == 1 => self.from_coeffs(&[*v]),
            ElemRepr::Scalar(v) => Err(Error::InvalidElement(format!(
                "{v}: extension field elements are digit lists"
            ))),
            ElemRepr::Digits(d) => self.from_coeffs(d),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        Elem { coeffs }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Elem { coeffs }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p;
        let Some(f) = &self.modulus else {
            return Elem {
                coeffs: SmallVec::from_elem(a.coeffs[0] * b.coeffs[0] % p, 1),
            };
        };
        let n = self.n;
        // unreduced sums of at most n products each; check_order keeps n * p^2 < 2^64
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // t^n = -(f_0 + .. + f_{n-1} t^{n-1})
        for d in (n..2 * n - 1).rev() {
            let c = prod[d] % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (i, &fi) in f[..n].iter().enumerate() {
                let slot = &mut prod[d - n + i];
                *slot = *slot % p + neg * fi;
            }
        }
        Elem {
            coeffs: prod[..n].iter().map(|&c| c % p).collect(),
        }
    }

    /// Multiplication by an integer scalar.
    pub fn mul_scalar(&self, a: &Elem, s: u64) -> Elem {
        let s = s % self.p;
        let coeffs = a.coeffs.iter().map(|&x| x * s % self.p).collect();
        Elem { coeffs }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_u64(a, self.q - 2))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` for a nonnegative exponent, with `0^0 = 1`.
    pub fn pow_u64(&self, a: &Elem, mut e: u64) -> Elem {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        e %= self.q - 1;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent. Nonzero bases reduce `e` mod `q - 1`.
    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        if a.is_zero() {
            return match e {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(Error::ZeroInverse),
            };
        }
        let e = e.rem_euclid((self.q - 1) as i64) as u64;
        Ok(self.pow_u64(a, e))
    }

    /// Exact multiplicative order, a divisor of `q - 1`.
    pub fn order(&self, x: &Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let one = self.one();
        let mut ord = self.q - 1;
        for (r, _) in nt::factorize(self.q - 1) {
            while ord.is_multiple_of(r) && self.pow_u64(x, ord / r) == one {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_generator(&self, x: &Elem) -> bool {
        !x.is_zero() && self.order(x) == Ok(self.q - 1)
    }

    /// The generator with the smallest canonical index.
    pub fn find_generator(&self) -> Elem {
        self.elements()
            .skip(1)
            .find(|x| self.is_generator(x))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Every generator of `F_q^*`, in canonical order.
    pub fn enumerate_generators(&self) -> Vec<Elem> {
        self.elements()
            .skip(1)
            .filter(|x| self.is_generator(x))
            .collect()
    }

    /// Human-readable element: decimal in prime fields, polynomial in `t` otherwise.
    pub fn format_elem(&self, x: &Elem) -> String {
        if self.n == 1 {
            return x.coeffs[0].to_string();
        }
        let terms: Vec<String> = x
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldCtx {
        build_field(7, 1).unwrap()
    }

    fn e(ctx: &FieldCtx, v: u64) -> Elem {
        ctx.from_index(v).unwrap()
    }

    #[test]
    fn build_field_examples() {
        let f = f7();
        assert_eq!((f.q(), f.m(), f.modulus()), (7, Some(2), None));
        let f = build_field(5, 2).unwrap();
        assert_eq!((f.q(), f.m()), (25, Some(8)));
        assert_eq!(f.modulus(), Some(&[2, 0, 1][..]));
        let f = build_field(13, 1).unwrap();
        assert_eq!((f.q(), f.m()), (13, Some(4)));
        assert_eq!(build_field(5, 1).unwrap().m(), None);
    }

    #[test]
    fn build_field_errors() {
        assert_eq!(build_field(6, 1), Err(Error::NotPrime(6)));
        assert_eq!(build_field(7, 0), Err(Error::ZeroDegree));
        assert!(matches!(build_field(7, 40), Err(Error::FieldTooLarge { .. })));
        assert_eq!(build_field_of_order(15), Err(Error::NotPrimePower(15)));
    }

    #[test]
    fn cubic_extension_modulus_is_smallest_irreducible() {
        let f = build_field(7, 3).unwrap();
        let chosen = f.modulus().unwrap().to_vec();
        // every smaller candidate has a root
        let chosen_val = chosen[0] + 7 * chosen[1] + 49 * chosen[2];
        for v in 0..chosen_val {
            let cand = [v % 7, v / 7 % 7, v / 49, 1];
            assert!(!fpoly::has_no_roots(&cand, 7), "{cand:?}");
        }
        assert!(fpoly::has_no_roots(&chosen, 7));
    }

    #[test]
    fn with_modulus_validates() {
        assert!(FieldCtx::with_modulus(5, &[2, 0, 1]).is_ok());
        assert!(FieldCtx::with_modulus(5, &[3, 0, 1]).is_ok());
        assert!(matches!(
            FieldCtx::with_modulus(5, &[1, 0, 1]),
            Err(Error::InvalidModulus { .. })
        ));
        assert!(matches!(
            FieldCtx::with_modulus(5, &[2, 0, 2]),
            Err(Error::InvalidModulus { .. })
        ));
        assert!(matches!(
            FieldCtx::with_modulus(5, &[7, 0, 1]),
            Err(Error::InvalidModulus { .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f = f7();
        assert_eq!(f.inv(&e(&f, 4)).unwrap(), e(&f, 2));
        assert_eq!(f.pow(&e(&f, 3), 6).unwrap(), f.one());
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.pow(&f.zero(), 0).unwrap(), f.one());
        assert_eq!(f.pow(&f.zero(), 5).unwrap(), f.zero());
        assert_eq!(f.pow(&f.zero(), -1), Err(Error::ZeroInverse));
        assert_eq!(f.pow(&e(&f, 3), -1).unwrap(), e(&f, 5));

        let f25 = build_field(5, 2).unwrap();
        let t = f25.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f25.mul(&t, &t), f25.scalar(3));
        assert_eq!(f25.scalar(-2), f25.scalar(3));
    }

    #[test]
    fn order_examples() {
        let f = f7();
        assert_eq!(f.order(&e(&f, 3)), Ok(6));
        assert_eq!(f.order(&e(&f, 2)), Ok(3));
        assert_eq!(f.order(&f.one()), Ok(1));
        assert_eq!(f.order(&f.zero()), Err(Error::ZeroElement));
        let f25 = build_field(5, 2).unwrap();
        assert_eq!(f25.order(&f25.one()), Ok(1));
    }

    #[test]
    fn generator_examples() {
        let f = f7();
        assert_eq!(f.find_generator(), e(&f, 3));
        assert_eq!(f.enumerate_generators(), vec![e(&f, 3), e(&f, 5)]);
        let f13 = build_field(13, 1).unwrap();
        assert_eq!(f13.find_generator(), e(&f13, 2));
        let gens: Vec<u64> = f13
            .enumerate_generators()
            .iter()
            .map(|g| f13.index(g))
            .collect();
        assert_eq!(gens, vec![2, 6, 7, 11]);
    }

    #[test]
    fn generators_are_coprime_powers() {
        for q in [7u64, 13, 19, 25, 49, 121] {
            let f = build_field_of_order(q).unwrap();
            let g = f.find_generator();
            let mut from_powers: Vec<u64> = (1..q - 1)
                .filter(|&j| nt::gcd(j, q - 1) == 1)
                .map(|j| f.index(&f.pow_u64(&g, j)))
                .collect();
            from_powers.sort_unstable();
            let listed: Vec<u64> = f.enumerate_generators().iter().map(|x| f.index(x)).collect();
            assert_eq!(listed, from_powers);
            assert_eq!(listed.len() as u64, nt::euler_phi(q - 1));
        }
    }

    #[test]
    fn group_identities_exhaustive() {
        for q in [7u64, 13, 25, 49, 343] {
            let f = build_field_of_order(q).unwrap();
            let m = f.m().unwrap();
            let one = f.one();
            for x in f.elements().skip(1) {
                assert_eq!(f.pow_u64(&x, q - 1), one);
                let c = f.pow_u64(&x, m);
                assert_eq!(f.pow_u64(&c, 3), one);
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), one);
            }
        }
    }

    #[test]
    fn index_roundtrip_and_repr() {
        let f = build_field(7, 2).unwrap();
        for (i, x) in f.elements().enumerate() {
            assert_eq!(f.index(&x), i as u64);
            assert_eq!(f.parse_repr(&f.repr(&x)).unwrap(), x);
        }
        assert_eq!(f.repr(&f.from_index(9).unwrap()), ElemRepr::Digits(vec![2, 1]));
        assert!(f.parse_repr(&ElemRepr::Scalar(3)).is_err());
        assert!(f.parse_repr(&ElemRepr::Digits(vec![7, 0])).is_err());
        assert_eq!(f.format_elem(&f.from_index(9).unwrap()), "t+2");
    }

    fn fields() -> impl Strategy<Value = FieldCtx> {
        prop_oneof![
            Just(build_field(7, 1).unwrap()),
            Just(build_field(5, 2).unwrap()),
            Just(build_field(11, 2).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(f in fields(), a in 0u64..121, b in 0u64..121, c in 0u64..121) {
            let (a, b, c) = (
                f.from_index(a % f.q()).unwrap(),
                f.from_index(b % f.q()).unwrap(),
                f.from_index(c % f.q()).unwrap(),
            );
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn pow_respects_exponent_laws(f in fields(), a in 1u64..121, i in -300i64..300, j in -300i64..300) {
            let a = f.from_index(1 + a % (f.q() - 1)).unwrap();
            let lhs = f.pow(&a, i + j).unwrap();
            let rhs = f.mul(&f.pow(&a, i).unwrap(), &f.pow(&a, j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
