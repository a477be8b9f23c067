//! Runs a subcommand from a JSON family configuration, as the binary would.
//!
//! ```text
//! cargo run --example run_config -- crates/core/configs/fam_rot.json dim
//! ```

use std::path::Path;

use affdim::cli;
use affdim::config::parse_config;

pub fn run_on(config: &Path, command: &str, out: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let cfg = parse_config(&std::fs::read_to_string(config)?)?;
    println!("{} regular and {} singular maps, seed {}", cfg.regular.len(), cfg.singular.len(), cfg.seed);
    let args = ["affdim", command, "--config", config.to_str().ok_or("non-UTF-8 path")?, "--out", out.to_str().ok_or("non-UTF-8 path")?];
    let code = cli::run(args);
    println!("exit code {code}");
    for entry in std::fs::read_dir(out)? {
        println!("  {}", entry?.path().display());
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/fam_scalar.json");
    run_on(&config, "dim", &std::env::temp_dir().join("affdim_run_config"))
}

#[allow(dead_code)]
fn main() {
    let mut args = std::env::args().skip(1);
    let config = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/fam_scalar.json").into());
    let command = args.next().unwrap_or_else(|| "dim".into());
    run_on(Path::new(&config), &command, Path::new("affdim-out")).unwrap();
}
