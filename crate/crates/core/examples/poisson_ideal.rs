//! Builds the triangular orbit ideal of one diagram with symbolic constants and checks it is Poisson.
//!
//! `cargo run --release --example poisson_ideal -- 6,3,4`

use ut_orbits::admissible::{render_diagram, subset_by_label, Label};
use ut_orbits::symbolic::{build_ideal, is_poisson_ideal, Constants};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let label: Label = std::env::args().nth(1).unwrap_or_else(|| "6,3,4".into()).parse()?;
    let s = subset_by_label(label)?;
    println!("{label} {s}");
    print!("{}", render_diagram(&s).render(true));
    let o = build_ideal(&s, &Constants::symbolic(&s))?;
    println!("column cases: {:?}", o.cases);
    for (eta, g) in &o.generators {
        println!("  [{eta}] {g} = 0");
    }
    println!("canonical pairs {{p, q}} = 1:");
    for (p, q) in &o.pairs {
        println!("  p = {p}, q = {q}");
    }
    println!("Poisson: {}", is_poisson_ideal(&o.ideal)?);
    Ok(())
}
