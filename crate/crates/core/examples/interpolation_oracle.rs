//! Rebuilds a family polynomial from nothing but its prescribed map and
//! compares it with the closed-form construction.
//!
//!     cargo run --example interpolation_oracle

use invopoly::{
    build_field_of_order, canonical_equal, expected_map, lagrange, to_sparse, ConstructionRecord,
    Family, GeneratorCtx,
};

fn main() -> invopoly::Result<()> {
    for q in [7, 19, 25] {
        let gctx = GeneratorCtx::canonical(build_field_of_order(q)?)?;
        let f = gctx.field();
        for family in [Family::T3, Family::S1] {
            let rec = ConstructionRecord::build(&gctx, family, 1)?;
            let dense = lagrange(f, &expected_map(family, &gctx, 1)?)?;
            let interp = to_sparse(&dense);
            println!(
                "q={q:<3} {:<8} degree={:?} equal={}\n    {}",
                rec.label(),
                dense.degree(),
                canonical_equal(&interp, &rec.poly),
                interp.display(f)
            );
        }
    }
    Ok(())
}
