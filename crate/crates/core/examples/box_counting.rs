//! Chaos-game cloud of a Cantor set carried by a rank-one map, and its box dimension.
//!
//! ```text
//! cargo run --release --example box_counting -- 1000000
//! ```

use affdim::attractor::{box_dim_estimate, chaos_game, DEFAULT_BURN_IN};
use affdim::presets;

pub fn run_with(points: usize) -> Result<(), Box<dyn std::error::Error>> {
    let p = presets::cantor_rank_one();
    let ifs = p.family.at(p.alpha);
    let cloud = chaos_game(&ifs, points, 7, DEFAULT_BURN_IN);
    let series = box_dim_estimate(&cloud, 4, 12)?;
    for (k, n) in series.ks.iter().zip(&series.counts) {
        println!("k = {k:>2}  occupied = {n}");
    }
    println!("fit over k = {:?}", series.fit);
    println!("slope {:.4}, r^2 {:.5}, log 2 / log 3 = {:.4}", series.slope, series.r_squared, 2f64.ln() / 3f64.ln());
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_with(100_000)
}

#[allow(dead_code)]
fn main() {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_000);
    run_with(n).unwrap();
}
