//! Builds a polarization for every maximal diagram and checks it at a random canonical form over F_101.
//!
//! `cargo run --release --example polarizations -- 6`

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ut_orbits::admissible::Catalog;
use ut_orbits::orbit::{canonical_form, polarization, verify_polarization};
use ut_orbits::symbolic::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(5);
    let field = Field::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for entry in Catalog::new(n)?.entries {
        let s = &entry.subset;
        let c: BTreeMap<_, _> = s.roots().iter().map(|&r| (r, field.from_i64(rng.gen_range(1..101)))).collect();
        let check = verify_polarization(s, &canonical_form(s, field, &c)?)?;
        let extra: Vec<String> = polarization(s).iter().filter(|r| !s.roots().contains(r)).map(|r| r.to_string()).collect();
        println!("{} |P| = {:>2} rank = {:>2} ok = {}  P \\ S = {{{}}}", entry.label, check.size, check.rank, check.ok(), extra.join(" "));
    }
    Ok(())
}
