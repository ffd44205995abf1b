//! Sweeps over fields and generators, aggregating verdicts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{all_records, expected_map, Family};
use crate::gf::{build_field_of_order, nt, Elem, ElemRepr, FieldCtx, GeneratorCtx};
use crate::interpolate::{canonical_equal, lagrange, to_sparse};
use crate::permlab::{eval_all, verify_evaluated, verify_record, PermMap, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroCoeffIncident {
    pub family: Family,
    pub k: u64,
    pub slot: char,
}

/// Two records inducing the same permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub gamma: ElemRepr,
    pub verdicts: Vec<Verdict>,
    pub distinct_permutations: usize,
    pub collisions: Vec<Collision>,
    pub sparsity_histogram: BTreeMap<usize, usize>,
    pub zero_coeff_incidents: Vec<ZeroCoeffIncident>,
    /// Records whose constructed polynomial differs from the interpolation
    /// of their prescribed map.
    pub interpolation_mismatches: Vec<String>,
}

impl FieldReport {
    pub fn passed_count(&self) -> usize {
        self.verdicts.iter().filter(|v| v.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed_count() == self.verdicts.len() && self.interpolation_mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSummary {
    pub gamma: ElemRepr,
    pub distinct_polynomials: usize,
    pub all_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisjointnessReport {
    pub q: u64,
    pub per_generator_counts: Vec<GeneratorSummary>,
    pub union_count: usize,
    /// `overlap_matrix[i][j]` = polynomials shared by generators `i` and `j`.
    pub overlap_matrix: Vec<Vec<usize>>,
}

fn check_family_field(ctx: &FieldCtx) -> Result<()> {
    if ctx.supports_families() {
        Ok(())
    } else {
        Err(Error::UnsupportedField { q: ctx.q() })
    }
}

/// Builds and verifies all `2(q-1)` records for one generator, plus the
/// interpolation round trip against each prescribed map.
pub fn survey_field(ctx: &FieldCtx, gamma: &Elem) -> Result<FieldReport> {
    check_family_field(ctx)?;
    let gctx = GeneratorCtx::new(ctx.clone(), gamma.clone())?;
    let records = all_records(&gctx)?;

    let maps: Vec<PermMap> = records.par_iter().map(|r| eval_all(ctx, &r.poly)).collect();
    let verdicts: Vec<Verdict> = records
        .par_iter()
        .zip(&maps)
        .map(|(r, map)| verify_evaluated(r, &gctx, map))
        .collect();

    let interpolation_mismatches = records
        .par_iter()
        .map(|r| -> Result<Option<String>> {
            let map = expected_map(r.family, &gctx, r.k as i64)?;
            let interp = to_sparse(&lagrange(ctx, &map)?);
            Ok((!canonical_equal(&interp, &r.poly)).then(|| r.label()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut first_seen: HashMap<Vec<usize>, String> = HashMap::new();
    let mut collisions = Vec::new();
    for (r, map) in records.iter().zip(&maps) {
        match first_seen.get(map.images()) {
            Some(first) => collisions.push(Collision {
                first: first.clone(),
                second: r.label(),
            }),
            None => {
                first_seen.insert(map.images().to_vec(), r.label());
            }
        }
    }

    let mut sparsity_histogram = BTreeMap::new();
    let mut zero_coeff_incidents = Vec::new();
    for r in &records {
        *sparsity_histogram.entry(r.term_count()).or_insert(0) += 1;
        for (slot, c) in r.coeffs.slots() {
            if c.is_zero() {
                zero_coeff_incidents.push(ZeroCoeffIncident {
                    family: r.family,
                    k: r.k,
                    slot,
                });
            }
        }
    }

    Ok(FieldReport {
        q: ctx.q(),
        p: ctx.p(),
        n: ctx.n(),
        gamma: ctx.repr(gamma),
        verdicts,
        distinct_permutations: first_seen.len(),
        collisions,
        sparsity_histogram,
        zero_coeff_incidents,
        interpolation_mismatches,
    })
}

/// Compares the canonical polynomial sets produced by every generator.
/// Publishes counts only; no disjointness outcome is asserted.
pub fn survey_generators(ctx: &FieldCtx) -> Result<DisjointnessReport> {
    check_family_field(ctx)?;
    let per_gen = ctx
        .enumerate_generators()
        .into_par_iter()
        .map(|gamma| -> Result<(GeneratorSummary, BTreeSet<String>)> {
            let gctx = GeneratorCtx::new(ctx.clone(), gamma.clone())?;
            let records = all_records(&gctx)?;
            let all_verified = records.iter().all(|r| verify_record(r, &gctx).passed);
            let polys: BTreeSet<String> = records
                .iter()
                .map(|r| crate::poly::terms_json(ctx, &r.poly).to_string())
                .collect();
            let summary = GeneratorSummary {
                gamma: ctx.repr(&gamma),
                distinct_polynomials: polys.len(),
                all_verified,
            };
            Ok((summary, polys))
        })
        .collect::<Result<Vec<_>>>()?;

    let union: BTreeSet<&String> = per_gen.iter().flat_map(|(_, s)| s.iter()).collect();
    let overlap_matrix = per_gen
        .iter()
        .map(|(_, a)| {
            per_gen
                .iter()
                .map(|(_, b)| a.intersection(b).count())
                .collect()
        })
        .collect();

    Ok(DisjointnessReport {
        q: ctx.q(),
        union_count: union.len(),
        overlap_matrix,
        per_generator_counts: per_gen.into_iter().map(|(s, _)| s).collect(),
    })
}

/// Odd prime powers `q = 1 (mod 3)` in `[q_min, q_max]`.
pub fn family_orders(q_min: u64, q_max: u64) -> Vec<u64> {
    (q_min.max(2)..=q_max)
        .filter(|&q| q % 2 == 1 && q % 3 == 1 && nt::prime_power(q).is_some())
        .collect()
}

/// One report per supported field order in range, canonical generator each.
pub fn survey_range(q_min: u64, q_max: u64) -> Result<Vec<FieldReport>> {
    family_orders(q_min, q_max)
        .into_par_iter()
        .map(|q| {
            let ctx = build_field_of_order(q)?;
            let gamma = ctx.find_generator();
            survey_field(&ctx, &gamma)
        })
        .collect()
}

/// CSV summary: one row per `(q, family, k)`.
pub fn write_csv_summary<W: Write>(reports: &[FieldReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "family", "k", "term_count", "passed"])?;
    for rep in reports {
        for v in &rep.verdicts {
            w.write_record([
                rep.q.to_string(),
                v.record.family.to_string(),
                v.record.k.to_string(),
                v.term_count.to_string(),
                v.passed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn orders_in_range() {
        assert_eq!(family_orders(7, 30), [7, 13, 19, 25]);
        assert_eq!(family_orders(26, 50), [31, 37, 43, 49]);
        assert!(family_orders(8, 12).is_empty());
        assert!(family_orders(0, 6).is_empty());
        assert!(survey_range(8, 12).unwrap().is_empty());
    }

    #[test]
    fn f7_report() {
        let f = build_field(7, 1).unwrap();
        let rep = survey_field(&f, &f.scalar(3)).unwrap();
        assert_eq!(rep.verdicts.len(), 12);
        assert!(rep.all_passed());
        assert!(rep.distinct_permutations < 12);
        assert_eq!(rep.collisions.len(), 12 - rep.distinct_permutations);
        assert!(rep
            .zero_coeff_incidents
            .iter()
            .any(|z| z.family == Family::T1 && z.k == 1));
    }

    #[test]
    fn f13_report() {
        let f = build_field(13, 1).unwrap();
        let rep = survey_field(&f, &f.scalar(2)).unwrap();
        assert_eq!(rep.verdicts.len(), 24);
        assert!(rep.all_passed());
        assert_eq!(rep.distinct_permutations, 24);
        assert!(rep.collisions.is_empty());
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = build_field(7, 1).unwrap();
        assert!(matches!(survey_field(&f, &f.scalar(2)), Err(Error::NotGenerator(_))));
        let f11 = build_field(11, 1).unwrap();
        assert!(matches!(
            survey_field(&f11, &f11.scalar(2)),
            Err(Error::UnsupportedField { q: 11 })
        ));
        assert!(survey_generators(&f11).is_err());
    }

    #[test]
    fn generator_survey_shape() {
        for (q, gens) in [(7u64, 2usize), (13, 4)] {
            let f = build_field_of_order(q).unwrap();
            let rep = survey_generators(&f).unwrap();
            assert_eq!(rep.per_generator_counts.len(), gens);
            let max = rep.per_generator_counts.iter().map(|g| g.distinct_polynomials).max().unwrap();
            let sum: usize = rep.per_generator_counts.iter().map(|g| g.distinct_polynomials).sum();
            assert!(rep.union_count >= max && rep.union_count <= sum);
            for (i, row) in rep.overlap_matrix.iter().enumerate() {
                assert_eq!(row[i], rep.per_generator_counts[i].distinct_polynomials);
            }
            assert!(rep.per_generator_counts.iter().all(|g| g.all_verified));
        }
    }

    #[test]
    fn csv_summary_rows() {
        let f = build_field(7, 1).unwrap();
        let rep = survey_field(&f, &f.scalar(3)).unwrap();
        let mut buf = Vec::new();
        write_csv_summary(&[rep], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "q,family,k,term_count,passed");
        assert_eq!(lines[1], "7,T1,0,3,true");
        assert_eq!(lines[2], "7,T1,1,1,true");
        assert_eq!(lines.len(), 13);
    }
}
