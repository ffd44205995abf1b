//! Prints the polynomials of all six families over F_13 with the canonical
//! generator, then one record as JSON.
//!
//!     cargo run --example construct_families

use invopoly::{build_field, ConstructionRecord, Family, GeneratorCtx};

fn main() -> invopoly::Result<()> {
    let gctx = GeneratorCtx::canonical(build_field(13, 1)?)?;
    let f = gctx.field();
    println!("q = 13, gamma = {}, m = {}", f.format_elem(gctx.gamma()), gctx.m());

    for family in Family::ALL {
        println!("{family} (fixes coset {}, {:?})", family.fixed_coset(), family.pairing());
        for k in 0..gctx.m() as i64 {
            let rec = ConstructionRecord::build(&gctx, family, k)?;
            println!("  k={k}  {}", rec.poly.display(f));
        }
    }

    let rec = ConstructionRecord::build(&gctx, Family::S2, 1)?;
    println!("{}", serde_json::to_string_pretty(&rec.to_doc(f)).unwrap());
    Ok(())
}
