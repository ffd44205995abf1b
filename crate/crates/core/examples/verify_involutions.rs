//! Verifies every record over F_49 and shows how a corrupted coefficient is
//! caught with a witness.
//!
//!     cargo run --example verify_involutions

use invopoly::{
    all_records, build_field, cycle_type, eval_all, verify_record, ConstructionRecord, Family,
    GeneratorCtx,
};

fn main() -> invopoly::Result<()> {
    let gctx = GeneratorCtx::canonical(build_field(7, 2)?)?;
    let f = gctx.field();

    let records = all_records(&gctx)?;
    let verdicts: Vec<_> = records.iter().map(|r| verify_record(r, &gctx)).collect();
    let passed = verdicts.iter().filter(|v| v.passed).count();
    println!("F_49: {passed}/{} records pass", verdicts.len());
    println!("cycle type: {:?}", cycle_type(&eval_all(f, &records[0].poly))?.counts());

    let good = ConstructionRecord::build(&gctx, Family::T2, 3)?;
    let mut coeffs = good.coeffs.clone();
    let bumped = f.add(coeffs.values()[1], &f.one());
    coeffs = coeffs.with_slot(1, bumped);
    let bad = ConstructionRecord::from_coeffs(&gctx, Family::T2, 3, coeffs)?;
    let v = verify_record(&bad, &gctx);
    println!(
        "mutated {}: passed={} failed_check={:?} witness={:?}",
        bad.label(),
        v.passed,
        v.failed_check,
        v.witness
    );
    Ok(())
}
