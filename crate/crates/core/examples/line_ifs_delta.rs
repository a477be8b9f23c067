//! The induced self-similar system on the image line of a rank-one map.
//!
//! ```text
//! cargo run --example line_ifs_delta
//! ```

use affdim::dimension::{similarity_dimension_1d, solve_sj_lower};
use affdim::exceptional::{delta_truncated, line_system};
use affdim::presets;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = presets::fam_rot();
    let ifs = p.family.at(0.3);
    for n in [1, 3, 6] {
        let sys = line_system(&ifs, 0, n);
        let ratios: Vec<f64> = sys.iter().map(|g| g.lambda).collect();
        println!(
            "n = {n}: {} line maps, similarity dimension {:.9}, s_j lower bound {:.9}",
            sys.len(),
            similarity_dimension_1d(&ratios, 1e-12),
            solve_sj_lower(&ifs, 0, n, 1e-12, 0.0).value
        );
    }

    let sys = line_system(&ifs, 0, 1);
    for k in [1, 4, 16, 64] {
        let d = delta_truncated(&sys, &[1, 2], &[2, 1], k)?;
        println!("Delta over {k:>2} terms: {:+.12} (tail <= {:.1e})", d.value, d.tail_bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
