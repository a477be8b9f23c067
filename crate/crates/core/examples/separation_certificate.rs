//! Uniform convex separation and projection witnesses.
//!
//! ```text
//! cargo run --example separation_certificate
//! ```

use affdim::presets;
use affdim::separation::{admissible_projections, check_convex_separation, family_bodies, projection_witness};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let p = presets::fam_rot();
    let u = p.region.clone().expect("fam-rot has a region");
    let cert = check_convex_separation(&p.family, &u);
    println!("contained: {:?}", cert.contained);
    println!(
        "min pairwise distance {:.6}, margin {:.6}, polygonization error {:.2e}, passed {}",
        cert.min_pairwise_distance, cert.margin, cert.polygonization_error, cert.passed
    );

    // body 2 is the segment swept by the rank-one map over all row directions
    let bodies = family_bodies(&p.family, &u);
    let arcs = admissible_projections(&bodies[0], &bodies[2])?;
    println!("admissible directions for bodies 0 and 2: {:?} (total width {:.4} rad)", arcs.arcs, arcs.total_width());

    let alpha = projection_witness(&p.family, &u, &[0], 0, 0, 2)?;
    println!("witness alpha for word [0]: {alpha:.6}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
