//! Whole-field evaluation and permutation checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::families::{expected_map, ConstructionRecord, RecordDoc};
use crate::gf::{Elem, ElemRepr, FieldCtx, GeneratorCtx};
use crate::poly::SparsePoly;

/// A total map on `F_q`, indexed by canonical element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermMap {
    images: Vec<usize>,
}

impl PermMap {
    pub fn from_images(images: Vec<usize>) -> Self {
        PermMap { images }
    }

    pub fn identity(q: usize) -> Self {
        PermMap {
            images: (0..q).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> usize {
        self.images[idx]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `self` after `other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &PermMap) -> PermMap {
        PermMap {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    /// First index whose image repeats an earlier image.
    fn first_collision(&self) -> Option<usize> {
        let mut seen = vec![false; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            if y >= seen.len() || std::mem::replace(&mut seen[y], true) {
                return Some(x);
            }
        }
        None
    }
}

/// Cycle length -> multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(BTreeMap<usize, usize>);

impl CycleType {
    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.0
    }

    pub fn count(&self, len: usize) -> usize {
        self.0.get(&len).copied().unwrap_or(0)
    }

    /// Sum of length times multiplicity; equals the number of points.
    pub fn total(&self) -> usize {
        self.0.iter().map(|(l, c)| l * c).sum()
    }

    /// `1^((q+2)/3) 2^((q-1)/3)`
    pub fn involution_target(q: u64) -> Self {
        let q = q as usize;
        CycleType(BTreeMap::from([(1, q.div_ceil(3)), (2, (q - 1) / 3)]))
    }
}

pub fn eval_poly(ctx: &FieldCtx, poly: &SparsePoly, x: &Elem) -> Elem {
    poly.terms().iter().fold(ctx.zero(), |acc, (e, c)| {
        ctx.add(&acc, &ctx.mul(c, &ctx.pow_u64(x, *e)))
    })
}

pub fn eval_all(ctx: &FieldCtx, poly: &SparsePoly) -> PermMap {
    let images = ctx
        .elements()
        .map(|x| ctx.index(&eval_poly(ctx, poly, &x)) as usize)
        .collect();
    PermMap { images }
}

pub fn is_permutation(map: &PermMap) -> bool {
    map.first_collision().is_none()
}

/// Whether `map` is its own inverse. Fails on non-permutations.
pub fn is_involution(map: &PermMap) -> crate::Result<bool> {
    if !is_permutation(map) {
        return Err(crate::Error::NotPermutation);
    }
    Ok(first_non_involutive(map).is_none())
}

fn first_non_involutive(map: &PermMap) -> Option<usize> {
    (0..map.len()).find(|&x| map.image(map.image(x)) != x)
}

pub fn fixed_point_indices(map: &PermMap) -> Vec<usize> {
    (0..map.len()).filter(|&x| map.image(x) == x).collect()
}

/// Fixed points in canonical order.
pub fn fixed_points(ctx: &FieldCtx, map: &PermMap) -> Vec<Elem> {
    fixed_point_indices(map)
        .into_iter()
        .map(|i| ctx.from_index(i as u64).expect("index within field"))
        .collect()
}

pub fn cycle_type(map: &PermMap) -> crate::Result<CycleType> {
    if !is_permutation(map) {
        return Err(crate::Error::NotPermutation);
    }
    let mut seen = vec![false; map.len()];
    let mut counts = BTreeMap::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map.image(x);
            len += 1;
        }
        *counts.entry(len).or_insert(0) += 1;
    }
    Ok(CycleType(counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Permutation,
    MatchesExpected,
    Involution,
    FixedPoints,
    CycleType,
    TermCount,
}

/// Outcome of verifying one record. Failures are data: the first failing
/// check is named together with a witness element where one exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub record: RecordDoc,
    pub passed: bool,
    pub is_permutation: bool,
    pub matches_expected: bool,
    pub is_involution: bool,
    pub fixed_point_count: usize,
    pub fixed_points_ok: bool,
    pub cycle_type: CycleType,
    pub cycle_type_ok: bool,
    pub term_count: usize,
    pub term_count_ok: bool,
    pub failed_check: Option<Check>,
    pub witness: Option<ElemRepr>,
}

/// Checks, in order: permutation, pointwise agreement with the prescribed
/// map, involution, fixed-point set `{0} ∪ fixed coset`, cycle type, and the
/// sparsity bound. `rec` must have been built from `gctx`.
pub fn verify_record(rec: &ConstructionRecord, gctx: &GeneratorCtx) -> Verdict {
    let map = eval_all(gctx.field(), &rec.poly);
    verify_evaluated(rec, gctx, &map)
}

/// [`verify_record`] with `map = eval_all(rec.poly)` already computed.
pub(crate) fn verify_evaluated(rec: &ConstructionRecord, gctx: &GeneratorCtx, map: &PermMap) -> Verdict {
    debug_assert_eq!(&rec.gamma, gctx.gamma());
    let ctx = gctx.field();
    let q = ctx.q() as usize;
    let expected = expected_map(rec.family, gctx, rec.k as i64)
        .expect("prescribed pairings are consistent for a valid generator context");

    let mut failures: Vec<(Check, Option<usize>)> = Vec::new();

    let collision = map.first_collision();
    let is_permutation = collision.is_none();
    if let Some(x) = collision {
        failures.push((Check::Permutation, Some(x)));
    }

    let mismatch = (0..q).find(|&x| map.image(x) != expected.image(x));
    let matches_expected = mismatch.is_none();
    if let Some(x) = mismatch {
        failures.push((Check::MatchesExpected, Some(x)));
    }

    let non_inv = first_non_involutive(map);
    let is_involution = is_permutation && non_inv.is_none();
    if !is_involution {
        failures.push((Check::Involution, non_inv.or(collision)));
    }

    let fixed = fixed_point_indices(map);
    let mut want_fixed = vec![false; q];
    want_fixed[0] = true;
    for i in 0..gctx.m() as i64 {
        let x = gctx.gamma_pow(3 * i + rec.family.fixed_coset() as i64);
        want_fixed[ctx.index(&x) as usize] = true;
    }
    let fixed_witness = (0..q).find(|&x| (map.image(x) == x) != want_fixed[x]);
    let fixed_points_ok = fixed_witness.is_none();
    if let Some(x) = fixed_witness {
        failures.push((Check::FixedPoints, Some(x)));
    }

    let cycles = cycle_type(map).unwrap_or_default();
    let cycle_type_ok = is_permutation && cycles == CycleType::involution_target(ctx.q());
    if !cycle_type_ok {
        failures.push((Check::CycleType, None));
    }

    let term_count = rec.term_count();
    let term_count_ok = term_count <= rec.family.max_terms();
    if !term_count_ok {
        failures.push((Check::TermCount, None));
    }

    let (failed_check, witness) = match failures.first() {
        Some((check, w)) => (
            Some(*check),
            w.map(|i| ctx.repr(&ctx.from_index(i as u64).expect("index within field"))),
        ),
        None => (None, None),
    };

    Verdict {
        record: rec.to_doc(ctx),
        passed: failed_check.is_none(),
        is_permutation,
        matches_expected,
        is_involution,
        fixed_point_count: fixed.len(),
        fixed_points_ok,
        cycle_type: cycles,
        cycle_type_ok,
        term_count,
        term_count_ok,
        failed_check,
        witness,
    }
}
