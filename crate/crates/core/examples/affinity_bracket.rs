//! Certified brackets for the affinity dimension.
//!
//! ```text
//! cargo run --release --example affinity_bracket -- 12
//! ```

use affdim::dimension::{affinity_dimension, SolverOptions};
use affdim::presets;

pub fn run_at(depth: usize) -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions { depth, ..Default::default() };
    for p in [presets::fam_scalar(), presets::fam_rot(), presets::generic_two_j()] {
        let ifs = p.family.at(p.alpha);
        let rep = affinity_dimension(&ifs, &opts)?;
        let b = rep.bracket;
        println!("{:<16} s in [{:.9}, {:.9}] (certified upper: {})", p.name, b.lower, b.upper, b.certified_upper);
        println!("{:<16} s_reg in [{:.9}, {:.9}], irreducible: {}", "", rep.s_reg.lower, rep.s_reg.upper, rep.irreducible);
        for pj in &rep.per_j {
            println!("{:<16} s_{} in [{:.9}, {:.9}]", "", pj.j, pj.lower, pj.upper);
        }
    }
    // the scalar family's dimension solves 2^-s + 3^-s = 1
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_at(8)
}

#[allow(dead_code)]
fn main() {
    let depth = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    run_at(depth).unwrap();
}
