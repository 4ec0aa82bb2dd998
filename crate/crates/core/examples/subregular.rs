//! Checks that each subregular orbit over F_p is the zero set of one of the minor systems.
//!
//! `cargo run --release --example subregular -- 5 3`

use ut_orbits::orbit::{census, orbit_bfs, subregular_dimension, SubregularToolkit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, p) = match args[..] {
        [n, p] => (n as usize, p),
        _ => (4, 2),
    };
    let toolkit = SubregularToolkit::new(n, p)?;
    let report = census(n, p)?;
    let dim = subregular_dimension(n);
    for rec in report.records.iter().filter(|r| r.dim == dim) {
        let (space, orbit) = orbit_bfs(&rec.canonical)?;
        let systems = toolkit.systems(&space.decode_digits(rec.canonical_code))?;
        let verdicts: Vec<String> = systems
            .iter()
            .map(|s| Ok(format!("{:?}={}", s.case, toolkit.cuts_out(&space, s, &orbit)?)))
            .collect::<Result<_, ut_orbits::Error>>()?;
        println!("{} {:<28} {}", rec.label, rec.canonical.to_string(), verdicts.join(" "));
    }
    Ok(())
}
