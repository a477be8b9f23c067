//! Locating a parameter where two maps share a fixed point, and certifying the
//! resulting dimension drop.
//!
//! ```text
//! cargo run --release --example exceptional_parameter
//! ```

use affdim::dimension::SolverOptions;
use affdim::exceptional::{dimension_drop, find_common_fixed_point_angle, DEFAULT_GRID};
use affdim::ifs::IfsFamily;
use affdim::presets;
use affdim::ParamPoint;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = presets::exceptional_demo();
    // turn the row direction so the root is not a grid point
    let mut singular = p.family.singular().to_vec();
    singular[0].c = 0.3;
    let fam = IfsFamily::new(p.family.regular().to_vec(), singular)?;
    let base = ParamPoint::Line(0.0);

    let cfp = find_common_fixed_point_angle(&fam, &base, 0, 0, DEFAULT_GRID)?;
    println!("alpha* = {:.12}  gap {:.2e}", cfp.alpha_star, cfp.delta);
    println!("plane residual {:.2e}, line residual {:.2e}", cfp.identity_residual, cfp.line_residual);

    let rep = dimension_drop(&fam, &base, 0, 0, DEFAULT_GRID, &SolverOptions::default())?;
    println!(
        "s(F) in [{:.6}, {:.6}], s(F') <= {:.6} at depth {}",
        rep.bracket_original.lower, rep.bracket_original.upper, rep.bracket_reduced.upper, rep.bracket_reduced.depth
    );
    println!("{:?} with margin {:.4}", rep.status, rep.margin);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
