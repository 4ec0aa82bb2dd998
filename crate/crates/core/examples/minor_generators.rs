//! The orbit invariants P_{h,eta} read off minors of the characteristic matrix.
//!
//! `cargo run --release --example minor_generators -- 7,2,7`

use ut_orbits::admissible::{render_diagram, subset_by_label, Label};
use ut_orbits::char_matrix::{minor_generators, w_eta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let label: Label = std::env::args().nth(1).unwrap_or_else(|| "7,2,7".into()).parse()?;
    let s = subset_by_label(label)?;
    println!("{label} {s}");
    print!("{}", render_diagram(&s).render(true));
    for g in minor_generators(&s)? {
        let w = w_eta(&s, g.eta)?;
        println!("eta = {}: rows {:?}, q = {}, d = {}, h = {}", g.eta, g.rows, w.q(), w.d(), g.h);
        println!("  {}", g.poly);
    }
    Ok(())
}
