//! Counts every coadjoint orbit of UT(n, F_p) and checks the counting identities.
//!
//! `cargo run --release --example orbit_census -- 5 3`

use std::time::Instant;

use ut_orbits::orbit::{census, stratum_dim_formula, stratum_max_dims};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, p) = match args[..] {
        [n, p] => (n, p as u64),
        _ => (4, 2),
    };
    let start = Instant::now();
    let report = census(n, p)?;
    println!("n = {n}, p = {p}: {} orbits in {:.2?}", report.total_orbits, start.elapsed());
    for (dim, count) in &report.per_dimension {
        println!("  dim {dim:>2}: {count:>8} orbits (expected {})", report.expected_per_dimension[dim]);
    }
    for (i, d) in stratum_max_dims(&report) {
        println!("  stratum {i}: max dim {d} (formula {})", stratum_dim_formula(n, i));
    }
    println!("identities: {}", serde_json::to_string(&report.identities)?);
    Ok(())
}
