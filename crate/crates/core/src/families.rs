//! The six coefficient families and their prescribed involutions.
//!
//! Every family fixes one coset of the cube subgroup `H` pointwise, fixes
//! zero, and swaps the two remaining cosets elementwise. Trinomial families
//! pair `gamma^(3i+r)` with an element `k` steps forward in the other coset;
//! six-term families pair by reflection `i -> k - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, ElemRepr, FieldCtx, GeneratorCtx};
use crate::permlab::PermMap;
use crate::poly::{terms_json, SparsePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    T1,
    T2,
    T3,
    S1,
    S2,
    S3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// coset index `i -> i + k`
    Shift,
    /// coset index `i -> k - i`, with a family-specific offset
    Reflection,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::T1,
        Family::T2,
        Family::T3,
        Family::S1,
        Family::S2,
        Family::S3,
    ];

    /// The coset `gamma^j * H` left pointwise fixed.
    pub fn fixed_coset(self) -> u8 {
        match self {
            Family::T1 | Family::S1 => 0,
            Family::T2 | Family::S2 => 1,
            Family::T3 | Family::S3 => 2,
        }
    }

    pub fn pairing(self) -> Pairing {
        if self.is_trinomial() {
            Pairing::Shift
        } else {
            Pairing::Reflection
        }
    }

    pub fn is_trinomial(self) -> bool {
        matches!(self, Family::T1 | Family::T2 | Family::T3)
    }

    pub fn max_terms(self) -> usize {
        if self.is_trinomial() {
            3
        } else {
            6
        }
    }

    /// Exponents carrying the coefficient slots, in slot order.
    pub fn exponents(self, m: u64) -> Vec<u64> {
        if self.is_trinomial() {
            vec![2 * m + 1, m + 1, 1]
        } else {
            vec![3 * m - 1, 2 * m + 1, 2 * m - 1, m + 1, m - 1, 1]
        }
    }

    /// Exponents of `gamma` swapped with each other for coset step `i`.
    pub fn swapped_exponents(self, i: i64, k: i64) -> (i64, i64) {
        match self {
            Family::T1 => (3 * i + 1, 3 * (i + k) + 2),
            Family::T2 => (3 * i, 3 * (i + k) + 2),
            Family::T3 => (3 * i, 3 * (i + k) + 1),
            Family::S1 => (3 * i + 1, 3 * (k - i) - 1),
            Family::S2 => (3 * i, 3 * (k - i) + 2),
            Family::S3 => (3 * i, 3 * (k - i) + 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}; expected one of T1 T2 T3 S1 S2 S3"))
    }
}

/// Coefficients in slot order matching [`Family::exponents`].
///
/// The S1 family repeats its `b` and `c` values; they are stored expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSet {
    Trinomial {
        a: Elem,
        b: Elem,
        c: Elem,
    },
    SixTerm {
        a: Elem,
        b: Elem,
        c: Elem,
        d: Elem,
        e: Elem,
        f: Elem,
    },
}

const SLOT_NAMES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

impl CoeffSet {
    fn from_values(mut v: Vec<Elem>) -> Self {
        match v.len() {
            3 => {
                let c = v.pop().unwrap();
                let b = v.pop().unwrap();
                let a = v.pop().unwrap();
                CoeffSet::Trinomial { a, b, c }
            }
            6 => {
                let f = v.pop().unwrap();
                let e = v.pop().unwrap();
                let d = v.pop().unwrap();
                let c = v.pop().unwrap();
                let b = v.pop().unwrap();
                let a = v.pop().unwrap();
                CoeffSet::SixTerm { a, b, c, d, e, f }
            }
            n => unreachable!("coefficient sets have 3 or 6 slots, got {n}"),
        }
    }

    pub fn values(&self) -> Vec<&Elem> {
        match self {
            CoeffSet::Trinomial { a, b, c } => vec![a, b, c],
            CoeffSet::SixTerm { a, b, c, d, e, f } => vec![a, b, c, d, e, f],
        }
    }

    /// `(slot name, value)` pairs.
    pub fn slots(&self) -> Vec<(char, &Elem)> {
        SLOT_NAMES.into_iter().zip(self.values()).collect()
    }

    /// Copy with slot `idx` replaced.
    pub fn with_slot(&self, idx: usize, value: Elem) -> Self {
        let mut v: Vec<Elem> = self.values().into_iter().cloned().collect();
        v[idx] = value;
        CoeffSet::from_values(v)
    }

    pub fn len(&self) -> usize {
        match self {
            CoeffSet::Trinomial { .. } => 3,
            CoeffSet::SixTerm { .. } => 6,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn normalize_k(gctx: &GeneratorCtx, k: i64) -> i64 {
    k.rem_euclid(gctx.m() as i64)
}

/// Closed-form coefficients of the trinomial families.
pub fn trinomial_coeffs(family: Family, gctx: &GeneratorCtx, k: i64) -> Result<CoeffSet> {
    if !family.is_trinomial() {
        return Err(Error::WrongFamilyKind {
            family,
            expected: "trinomial",
        });
    }
    let f = gctx.field();
    let m = gctx.m() as i64;
    let k = normalize_k(gctx, k);
    let g = |e: i64| gctx.gamma_pow(e);
    let sum = |xs: [Elem; 3]| xs.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
    let one = f.one();
    let three = f.scalar(3);
    let thirds = |num: Elem, den: Elem| -> Result<Elem> { f.div(&num, &f.mul(&three, &den)) };

    let (a, b, c) = match family {
        Family::T1 => {
            let den = g(m + 3 * k + 1);
            (
                thirds(sum([g(2 * m + 6 * k + 2), g(m + 3 * k + 1), one.clone()]), den.clone())?,
                thirds(sum([g(2 * m), g(m + 3 * k + 1), g(6 * k + 2)]), den)?,
                thirds(sum([g(6 * k + 2), g(3 * k + 1), one]), g(3 * k + 1))?,
            )
        }
        Family::T2 => {
            let den = g(m + 3 * k + 2);
            (
                thirds(sum([g(2 * m + 3 * k + 2), g(m + 6 * k + 4), one.clone()]), den.clone())?,
                thirds(sum([g(2 * m), g(m + 6 * k + 4), g(3 * k + 2)]), den)?,
                thirds(sum([g(6 * k + 4), g(3 * k + 2), one]), g(3 * k + 2))?,
            )
        }
        Family::T3 => {
            let den = g(m + 3 * k + 1);
            (
                thirds(sum([g(2 * m), g(m + 6 * k + 2), g(3 * k + 1)]), den.clone())?,
                thirds(sum([g(2 * m + 3 * k + 1), g(m + 6 * k + 2), one.clone()]), den)?,
                thirds(sum([g(6 * k + 2), g(3 * k + 1), one]), g(3 * k + 1))?,
            )
        }
        _ => unreachable!(),
    };
    Ok(CoeffSet::Trinomial { a, b, c })
}

/// Closed-form coefficients of the six-term families, expanded to six slots.
pub fn sixterm_coeffs(family: Family, gctx: &GeneratorCtx, k: i64) -> Result<CoeffSet> {
    if family.is_trinomial() {
        return Err(Error::WrongFamilyKind {
            family,
            expected: "six-term",
        });
    }
    let f = gctx.field();
    let m = gctx.m() as i64;
    let k = normalize_k(gctx, k);
    let g = |e: i64| gctx.gamma_pow(e);
    let third = f.inv(&f.scalar(3))?;
    let over3 = |x: Elem| f.mul(&x, &third);
    let neg_over3 = |x: Elem| f.neg(&f.mul(&x, &third));
    let two_over3 = |x: Elem| f.mul_scalar(&f.mul(&x, &third), 2);

    let v = match family {
        Family::S1 => {
            let a = two_over3(g(3 * k));
            let b = third.clone();
            let c = neg_over3(g(3 * k));
            vec![a, b.clone(), c.clone(), b.clone(), c, b]
        }
        Family::S2 => vec![
            two_over3(g(3 * k + 2)),
            over3(g(m)),
            neg_over3(g(m + 3 * k + 2)),
            over3(g(2 * m)),
            neg_over3(g(2 * m + 3 * k + 2)),
            third.clone(),
        ],
        Family::S3 => vec![
            two_over3(g(3 * k + 1)),
            over3(g(2 * m)),
            neg_over3(g(2 * m + 3 * k + 1)),
            over3(g(m)),
            neg_over3(g(m + 3 * k + 1)),
            third.clone(),
        ],
        _ => unreachable!(),
    };
    Ok(CoeffSet::from_values(v))
}

pub fn coeffs(family: Family, gctx: &GeneratorCtx, k: i64) -> Result<CoeffSet> {
    if family.is_trinomial() {
        trinomial_coeffs(family, gctx, k)
    } else {
        sixterm_coeffs(family, gctx, k)
    }
}

/// Places a coefficient set on the family's exponents and normalizes.
pub fn poly_from_coeffs(family: Family, ctx: &FieldCtx, m: u64, coeffs: &CoeffSet) -> SparsePoly {
    SparsePoly::normalized(
        ctx,
        family
            .exponents(m)
            .into_iter()
            .zip(coeffs.values().into_iter().cloned()),
    )
}

pub fn build_poly(family: Family, gctx: &GeneratorCtx, k: i64) -> Result<SparsePoly> {
    let c = coeffs(family, gctx, k)?;
    let poly = poly_from_coeffs(family, gctx.field(), gctx.m(), &c);
    if poly.is_zero() {
        return Err(Error::EmptyPolynomial {
            family,
            k: normalize_k(gctx, k) as u64,
        });
    }
    Ok(poly)
}

/// The permutation prescribed for `(family, k)`, built from exponent
/// arithmetic on `gamma` alone. No polynomial is evaluated.
pub fn expected_map(family: Family, gctx: &GeneratorCtx, k: i64) -> Result<PermMap> {
    let f = gctx.field();
    let q = f.q() as usize;
    let m = gctx.m() as i64;
    let k = normalize_k(gctx, k);
    let idx = |e: i64| f.index(&gctx.gamma_pow(e)) as usize;

    let mut images: Vec<Option<usize>> = vec![None; q];
    let mut assign = |from: usize, to: usize| -> Result<()> {
        match images[from] {
            Some(prev) if prev != to => Err(Error::InconsistentClaims {
                family,
                k: k as u64,
                index: from,
            }),
            _ => {
                images[from] = Some(to);
                Ok(())
            }
        }
    };

    assign(0, 0)?;
    let r = family.fixed_coset() as i64;
    for i in 0..m {
        let x = idx(3 * i + r);
        assign(x, x)?;
    }
    for i in 0..m {
        let (ex, ey) = family.swapped_exponents(i, k);
        let (x, y) = (idx(ex), idx(ey));
        assign(x, y)?;
        assign(y, x)?;
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or(Error::InconsistentClaims {
                family,
                k: k as u64,
                index: i,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PermMap::from_images(images))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecord {
    pub family: Family,
    pub gamma: Elem,
    pub k: u64,
    pub coeffs: CoeffSet,
    pub poly: SparsePoly,
}

impl ConstructionRecord {
    pub fn build(gctx: &GeneratorCtx, family: Family, k: i64) -> Result<Self> {
        let c = coeffs(family, gctx, k)?;
        Self::from_coeffs(gctx, family, k, c)
    }

    /// Record for an arbitrary coefficient set on the family's exponents.
    /// Used to construct perturbed records; the coefficients need not match
    /// the closed forms.
    pub fn from_coeffs(gctx: &GeneratorCtx, family: Family, k: i64, coeffs: CoeffSet) -> Result<Self> {
        let k = normalize_k(gctx, k) as u64;
        let poly = poly_from_coeffs(family, gctx.field(), gctx.m(), &coeffs);
        if poly.is_zero() {
            return Err(Error::EmptyPolynomial { family, k });
        }
        Ok(ConstructionRecord {
            family,
            gamma: gctx.gamma().clone(),
            k,
            coeffs,
            poly,
        })
    }

    pub fn term_count(&self) -> usize {
        self.poly.term_count()
    }

    pub fn label(&self) -> String {
        format!("{}/k={}", self.family, self.k)
    }

    pub fn to_doc(&self, ctx: &FieldCtx) -> RecordDoc {
        RecordDoc {
            q: ctx.q(),
            p: ctx.p(),
            n: ctx.n(),
            modulus: ctx.modulus().map(<[u64]>::to_vec),
            family: self.family,
            gamma: ctx.repr(&self.gamma),
            k: self.k,
            terms: terms_json(ctx, &self.poly),
            term_count: self.term_count(),
        }
    }
}

/// JSON form of a [`ConstructionRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub modulus: Option<Vec<u64>>,
    pub family: Family,
    pub gamma: ElemRepr,
    pub k: u64,
    pub terms: serde_json::Value,
    pub term_count: usize,
}

/// All `6m = 2(q-1)` records, ordered by family then `k`.
pub fn all_records(gctx: &GeneratorCtx) -> Result<Vec<ConstructionRecord>> {
    let m = gctx.m() as i64;
    Family::ALL
        .into_iter()
        .flat_map(|fam| (0..m).map(move |k| (fam, k)))
        .map(|(fam, k)| ConstructionRecord::build(gctx, fam, k))
        .collect()
}
