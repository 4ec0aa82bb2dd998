//! Canonical forms f_{S,c} over F_p: orbit size, Kirillov rank and round-trip classification.
//!
//! `cargo run --release --example canonical_forms -- 4 3`

use std::collections::BTreeMap;

use ut_orbits::admissible::Catalog;
use ut_orbits::orbit::{all_constants, canonical_form, classify, kirillov_rank, orbit_bfs};
use ut_orbits::symbolic::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, p) = match args[..] {
        [n, p] => (n as usize, p),
        _ => (4, 2),
    };
    let field = Field::prime(p)?;
    for e in Catalog::new(n)?.entries {
        for c in all_constants(&e.subset, p) {
            let c: BTreeMap<_, _> = c.into_iter().map(|(r, v)| (r, field.from_i64(v as i64))).collect();
            let f = canonical_form(&e.subset, field, &c)?;
            let (_, orbit) = orbit_bfs(&f)?;
            let back = classify(&f)?;
            println!(
                "{} f = {{{f}}}: |orbit| = {:>5}, rank = {:>2}, classified as {} at {{{}}}",
                e.label,
                orbit.size(),
                kirillov_rank(&f)?,
                back.label,
                back.canonical
            );
        }
    }
    Ok(())
}
