//! Classifies an arbitrary form over F_p by searching its orbit for the canonical member.
//!
//! `cargo run --release --example classify_form -- 5 3 "5,1=1;4,2=2;4,3=1;2,1=2"`

use ut_orbits::admissible::render_diagram;
use ut_orbits::orbit::{classify, stratum, LinearForm};
use ut_orbits::symbolic::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(5);
    let p: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(3);
    let text = args.next().unwrap_or_else(|| "5,1=1;4,2=2;4,3=1;2,1=2".into());
    let f = LinearForm::parse(n, Field::prime(p)?, &text)?;
    let c = classify(&f)?;
    println!("form {{{f}}} over F_{p}, stratum {}", stratum(&f));
    println!("orbit size {} = {p}^{}", c.orbit_size, c.dim);
    println!("diagram {} {}", c.label, c.subset);
    print!("{}", render_diagram(&c.subset).render(true));
    println!("canonical member {{{}}}", c.canonical);
    Ok(())
}
