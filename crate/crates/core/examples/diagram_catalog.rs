//! Prints the catalog of maximal admissible diagrams with labels and orbit dimensions.
//!
//! `cargo run --example diagram_catalog -- 5`

use ut_orbits::admissible::{render_diagram, Catalog};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(4);
    let catalog = Catalog::new(n)?;
    println!("{} maximal diagrams for n = {n}\n", catalog.len());
    for e in &catalog.entries {
        println!("{} {} dim {}", e.label, e.subset, e.subset.dimension());
        print!("{}", render_diagram(&e.subset).render(true));
        println!();
    }
    Ok(())
}
