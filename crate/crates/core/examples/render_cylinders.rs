//! Draws the first cylinder levels of a family as SVG.
//!
//! ```text
//! cargo run --example render_cylinders -- out.svg 3
//! ```

use std::path::{Path, PathBuf};

use affdim::attractor::{render_levels, Style};
use affdim::presets;
use affdim::ParamPoint;

pub fn render_to(path: &Path, levels: usize) -> Result<(), Box<dyn std::error::Error>> {
    let p = presets::fam_rot();
    let u = p.region.clone().expect("fam-rot has a region");
    let drawing = render_levels(&p.family, &ParamPoint::Line(p.alpha), &u, levels)?;
    for level in 1..=levels {
        println!(
            "level {level}: {} cylinders, {} swept segments",
            drawing.count(level, Style::Cylinder),
            drawing.count(level, Style::Swept)
        );
    }
    std::fs::write(path, drawing.to_svg(800))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    render_to(&std::env::temp_dir().join("affdim_cylinders.svg"), 2)
}

#[allow(dead_code)]
fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("cylinders.svg"));
    let levels = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    render_to(&path, levels).unwrap();
}
