//! Closed-form singular values, the singular value function and rank-one factors.
//!
//! ```text
//! cargo run --example singular_values
//! ```

use affdim::linalg::{conditional_norm, image_dir, singular_values, svf, Linear, Mat2, RankOneFactor};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let m = Mat2::new(0.4, 0.1, -0.2, 0.3);
    let (s1, s2) = singular_values(&m);
    println!("A = {m}");
    println!("singular values {s1:.12} {s2:.12} (|det| = {:.12})", m.det().abs());
    for t in [0.0, 0.5, 1.0, 1.5, 2.0] {
        println!("phi^{t}(A) = {:.12}", svf(&m, t));
    }

    // a rank-one map stays factored through products
    let b = RankOneFactor::new(0.5, 0.3, 1.1);
    let ab = Linear::Full(m).mul(&Linear::from(b));
    let via_restriction = conditional_norm(&m, image_dir(&b)) * b.rho;
    println!("|AB| = {:.15}, |A restricted to Im B|·|B| = {:.15}", ab.norm(), via_restriction);
    println!("rank one: {}, phi^1.5(AB) = {}", ab.is_rank_one(), ab.svf(1.5));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
