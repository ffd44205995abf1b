//! Acceptance criteria, one pass/fail line each. Every check is exact; the
//! only thresholds are the wall-time budgets.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use invopoly::gf::nt;
use invopoly::surveyor::family_orders;
use invopoly::{
    all_records, build_field, build_field_of_order, canonical_equal, eval_all, expected_map,
    fixed_points, lagrange, survey_field, survey_generators, survey_range, to_sparse,
    trinomial_coeffs, verify_record, ConstructionRecord, CycleType, Family, FieldReport,
    GeneratorCtx,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const SWEEP_MAX: u64 = 343;
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep() -> Result<(Vec<FieldReport>, Duration), String> {
    let t = Instant::now();
    let reports = survey_range(7, SWEEP_MAX).map_err(|e| e.to_string())?;
    Ok((reports, t.elapsed()))
}

fn involution_claims(reports: &[FieldReport], elapsed: Duration) -> Outcome {
    let orders: Vec<u64> = reports.iter().map(|r| r.q).collect();
    ensure(orders == family_orders(7, SWEEP_MAX), || format!("swept {orders:?}"))?;
    for want in [25, 49, 121, 169, 289, 343] {
        ensure(orders.contains(&want), || format!("extension field {want} missing"))?;
    }
    let mut total = 0;
    for r in reports {
        let q = r.q;
        ensure(r.verdicts.len() as u64 == 2 * (q - 1), || format!("q={q}: {} verdicts", r.verdicts.len()))?;
        let target = CycleType::involution_target(q);
        for v in &r.verdicts {
            let label = format!("q={q} {}/k={}", v.record.family, v.record.k);
            ensure(v.passed, || format!("{label} failed {:?} witness {:?}", v.failed_check, v.witness))?;
            ensure(v.is_permutation && v.matches_expected && v.is_involution, || label.clone())?;
            ensure(v.fixed_point_count as u64 == q.div_ceil(3), || format!("{label}: {} fixed", v.fixed_point_count))?;
            ensure(v.cycle_type == target, || format!("{label}: cycle type {:?}", v.cycle_type))?;
            total += 1;
        }
    }
    ensure(elapsed < SWEEP_BUDGET, || format!("sweep took {elapsed:?}"))?;
    Ok(format!(
        "{} fields, {total} records verified in {:.1}s",
        reports.len(),
        elapsed.as_secs_f64()
    ))
}

fn lemma_check() -> Outcome {
    let mut checked = 0usize;
    for q in family_orders(7, SWEEP_MAX) {
        let f = build_field_of_order(q).map_err(|e| e.to_string())?;
        for gamma in f.enumerate_generators() {
            let g = GeneratorCtx::new(f.clone(), gamma).map_err(|e| e.to_string())?;
            for k in 0..g.m() as i64 {
                let c = trinomial_coeffs(Family::T1, &g, k).map_err(|e| e.to_string())?;
                let s = c.values().into_iter().fold(f.zero(), |acc, x| f.add(&acc, x));
                ensure(s == f.one(), || format!("q={q} k={k}: a+b+c = {s:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("a+b+c = 1 for {checked} (q, gamma, k) triples"))
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for q in [7u64, 13, 19, 25] {
        let g = GeneratorCtx::canonical(build_field_of_order(q).unwrap()).unwrap();
        let recs = all_records(&g).unwrap();
        ensure(recs.len() as u64 == 2 * (q - 1), || format!("q={q}"))?;
        for r in recs {
            let map = expected_map(r.family, &g, r.k as i64).unwrap();
            let interp = to_sparse(&lagrange(g.field(), &map).unwrap());
            ensure(canonical_equal(&interp, &r.poly), || {
                format!(
                    "q={q} {}: {} vs {}",
                    r.label(),
                    interp.display(g.field()),
                    r.poly.display(g.field())
                )
            })?;
            n += 1;
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{n} interpolations match in {:.2}s", elapsed.as_secs_f64()))
}

fn sparsity(reports: &[FieldReport]) -> Outcome {
    for r in reports {
        for v in &r.verdicts {
            let bound = if v.record.family.is_trinomial() { 3 } else { 6 };
            ensure(v.term_count <= bound, || {
                format!("q={} {}/k={}: {} terms", r.q, v.record.family, v.record.k, v.term_count)
            })?;
        }
    }
    let r7 = reports.iter().find(|r| r.q == 7).ok_or("no q=7 report")?;
    ensure(r7.gamma == invopoly::ElemRepr::Scalar(3), || format!("q=7 gamma {:?}", r7.gamma))?;
    let v = r7
        .verdicts
        .iter()
        .find(|v| v.record.family == Family::T1 && v.record.k == 1)
        .ok_or("T1/k=1 missing")?;
    ensure(v.record.terms == serde_json::json!([[5, 1]]), || format!("T1/k=1 terms {}", v.record.terms))?;
    let slots: Vec<char> = r7
        .zero_coeff_incidents
        .iter()
        .filter(|z| z.family == Family::T1 && z.k == 1)
        .map(|z| z.slot)
        .collect();
    ensure(slots == ['b', 'c'], || format!("T1/k=1 zero slots {slots:?}"))?;
    let incidents: usize = reports.iter().map(|r| r.zero_coeff_incidents.len()).sum();
    Ok(format!(
        "bounds hold; q=7 T1/k=1 = x^5 with b = c = 0; {incidents} zero-coefficient incidents in sweep"
    ))
}

fn worked_example() -> Outcome {
    let g = GeneratorCtx::canonical(build_field(7, 1).unwrap()).unwrap();
    let f = g.field();
    ensure(f.index(g.gamma()) == 3, || "canonical generator of F_7 is not 3".into())?;
    let r = ConstructionRecord::build(&g, Family::T1, 0).unwrap();
    let coeffs: Vec<u64> = r.coeffs.values().into_iter().map(|c| f.index(c)).collect();
    ensure(coeffs == [2, 3, 3], || format!("coefficients {coeffs:?}"))?;
    let shown = r.poly.display(f);
    ensure(shown == "2x^5 + 3x^3 + 3x", || shown.clone())?;
    let map = eval_all(f, &r.poly);
    let fixed: Vec<u64> = fixed_points(f, &map).iter().map(|x| f.index(x)).collect();
    ensure(fixed == [0, 1, 6], || format!("fixed {fixed:?}"))?;
    ensure(map.image(3) == 2 && map.image(2) == 3, || format!("map {:?}", map.images()))?;
    ensure(verify_record(&r, &g).passed, || "verdict failed".into())?;
    Ok(format!("{shown}, fixed {{0,1,6}}, (3 2) a 2-cycle"))
}

fn distinctness(reports: &[FieldReport]) -> Outcome {
    for r in reports.iter().filter(|r| r.q >= 13) {
        ensure(r.distinct_permutations as u64 == 2 * (r.q - 1), || {
            format!("q={}: {} distinct, collisions {:?}", r.q, r.distinct_permutations, r.collisions)
        })?;
    }
    let r7 = reports.iter().find(|r| r.q == 7).ok_or("no q=7 report")?;
    ensure(r7.distinct_permutations < 12, || "q=7 unexpectedly has no collisions".into())?;
    ensure(r7.collisions.len() == 12 - r7.distinct_permutations, || "collision list incomplete".into())?;
    // the listed pairs really induce identical maps
    let g = GeneratorCtx::canonical(build_field(7, 1).unwrap()).unwrap();
    let recs = all_records(&g).unwrap();
    let map_of = |label: &str| {
        let r = recs.iter().find(|r| r.label() == label).unwrap();
        eval_all(g.field(), &r.poly)
    };
    for c in &r7.collisions {
        ensure(map_of(&c.first) == map_of(&c.second), || format!("{c:?} differ"))?;
    }
    let pairs: Vec<String> = r7.collisions.iter().map(|c| format!("{}~{}", c.first, c.second)).collect();
    Ok(format!(
        "2(q-1) distinct for all q >= 13; q=7 has {} distinct: {}",
        r7.distinct_permutations,
        pairs.join(" ")
    ))
}

fn disjointness_survey() -> Outcome {
    let mut lines = Vec::new();
    for q in [7u64, 13, 19, 25, 31] {
        let f = build_field_of_order(q).unwrap();
        let a = survey_generators(&f).map_err(|e| e.to_string())?;
        let b = survey_generators(&f).map_err(|e| e.to_string())?;
        let (ja, jb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        ensure(ja == jb, || format!("q={q}: report not reproducible"))?;
        ensure(a.per_generator_counts.len() as u64 == nt::euler_phi(q - 1), || format!("q={q}: generator count"))?;
        ensure(a.per_generator_counts.iter().all(|g| g.all_verified), || format!("q={q}: a generator fails"))?;
        let sum: usize = a.per_generator_counts.iter().map(|g| g.distinct_polynomials).sum();
        let max = a.per_generator_counts.iter().map(|g| g.distinct_polynomials).max().unwrap_or(0);
        ensure(a.union_count >= max && a.union_count <= sum, || format!("q={q}: union {}", a.union_count))?;
        // every generator must also pass the full involution claims
        for gamma in f.enumerate_generators() {
            let rep = survey_field(&f, &gamma).map_err(|e| e.to_string())?;
            ensure(rep.all_passed(), || format!("q={q} gamma={:?}", gamma))?;
        }
        lines.push(format!("q={q}: {} gens, union {}/{sum}", a.per_generator_counts.len(), a.union_count));
    }
    Ok(lines.join("; "))
}

fn mutation_sensitivity() -> Outcome {
    let g = GeneratorCtx::canonical(build_field(13, 1).unwrap()).unwrap();
    let f = g.field();
    let recs = all_records(&g).unwrap();
    ensure(recs.iter().all(|r| verify_record(r, &g).passed), || "baseline failure".into())?;
    let mut rng = StdRng::seed_from_u64(0x1d_c0ffee);
    let picked: Vec<&ConstructionRecord> = recs.choose_multiple(&mut rng, 20).collect();
    ensure(picked.len() == 20, || "fewer than 20 records".into())?;
    let mut mutants = 0;
    for r in picked {
        for (slot, c) in r.coeffs.values().into_iter().enumerate() {
            let bumped = f.add(c, &f.one());
            let m = ConstructionRecord::from_coeffs(&g, r.family, r.k as i64, r.coeffs.with_slot(slot, bumped))
                .map_err(|e| e.to_string())?;
            let v = verify_record(&m, &g);
            ensure(!v.passed && v.witness.is_some(), || {
                format!("{} slot {slot}: mutant passed or has no witness", r.label())
            })?;
            mutants += 1;
        }
    }
    Ok(format!("{mutants} single-coefficient mutants of 20 records all rejected with witnesses"))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    match res {
        Ok(detail) => {
            println!("[PASS] {name}: {detail}");
            true
        }
        Err(why) => {
            println!("[FAIL] {name}: {why}");
            false
        }
    }
}

fn main() {
    let swept = sweep();
    let with_sweep = |f: fn(&[FieldReport], Duration) -> Outcome| -> Outcome {
        match &swept {
            Ok((r, t)) => f(r, *t),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };

    let results = [
        run("AC1 involution claims, 7 <= q <= 343", || with_sweep(involution_claims)),
        run("AC2 T1 lemma a+b+c = 1", lemma_check),
        run("AC3 interpolation oracle equivalence", oracle_equivalence),
        run("AC4 sparsity bounds", || with_sweep(|r, _| sparsity(r))),
        run("AC5 worked example q=7", worked_example),
        run("AC6 distinct permutations", || with_sweep(|r, _| distinctness(r))),
        run("AC7 generator disjointness survey", disjointness_survey),
        run("AC8 mutation sensitivity", mutation_sensitivity),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("\n{passed}/{} acceptance criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
