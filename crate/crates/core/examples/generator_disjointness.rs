//! Compares the polynomial collections obtained from each generator of F_q^*.
//!
//!     cargo run --example generator_disjointness [q]

use invopoly::{build_field_of_order, survey_generators};

fn main() -> invopoly::Result<()> {
    let q = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(19);
    let rep = survey_generators(&build_field_of_order(q)?)?;
    println!("q = {q}: {} generators, union of collections = {}", rep.per_generator_counts.len(), rep.union_count);
    for (g, row) in rep.per_generator_counts.iter().zip(&rep.overlap_matrix) {
        println!(
            "gamma={:<4} distinct={:<3} verified={:<5} overlaps={:?}",
            g.gamma.to_string(),
            g.distinct_polynomials,
            g.all_verified,
            row
        );
    }
    Ok(())
}
