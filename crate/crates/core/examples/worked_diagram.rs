//! Builds one admissible subset step by step and draws its diagram.
//!
//! `cargo run --example worked_diagram`

use ut_orbits::admissible::{build_admissible, render_diagram, DiagramJson};
use ut_orbits::root_system::Root;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Root::alpha;
    let choices = [a(1, 3), a(2, 5), a(3, 5), a(3, 4)];
    for k in 1..=choices.len() {
        let s = build_admissible(5, &choices[..k])?;
        println!("after {k} choice(s): {s}");
        println!("  A_{} = {{{}}}", k + 1, s.a_chain(k + 1).iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
    }
    let s = build_admissible(5, &choices)?;
    println!("\nmaximal: {}, dimension {}", s.is_maximal(), s.dimension());
    print!("{}", render_diagram(&s).render(false));
    println!("{}", serde_json::to_string_pretty(&DiagramJson::new(&s, None))?);
    Ok(())
}
