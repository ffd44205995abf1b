//! Sweeps every supported field up to 100 and summarizes the reports:
//! pass counts, distinct permutations, sparsity and zero coefficients.
//!
//!     cargo run --release --example survey_fields [q_max]

use invopoly::survey_range;

fn main() -> invopoly::Result<()> {
    let q_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    println!("{:>4} {:>8} {:>9} {:>6}  sparsity", "q", "passed", "distinct", "zeros");
    for rep in survey_range(7, q_max)? {
        println!(
            "{:>4} {:>4}/{:<3} {:>9} {:>6}  {:?}",
            rep.q,
            rep.passed_count(),
            rep.verdicts.len(),
            rep.distinct_permutations,
            rep.zero_coeff_incidents.len(),
            rep.sparsity_histogram
        );
        for c in rep.collisions.iter().take(2) {
            println!("       same map: {} ~ {}", c.first, c.second);
        }
    }
    Ok(())
}
