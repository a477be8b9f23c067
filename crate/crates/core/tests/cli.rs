use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use affdim::cli::RunReport;
use affdim::config::parse_config;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn affdim(args: &[&str], out: &Path) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_affdim"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

fn read(out: &Path, name: &str) -> String {
    fs::read_to_string(out.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn report(out: &Path) -> RunReport {
    serde_json::from_str(&read(out, "report.json")).unwrap()
}

#[test]
fn dim_on_scalar_family_contains_root() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("fam_scalar.json");
    assert_eq!(affdim(&["dim", "--config", cfg.to_str().unwrap()], dir.path()), 0);
    let csv = read(dir.path(), "dim.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("quantity,lower,upper,depth,certified"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "affinity");
    let (lo, hi): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
    assert!(lo <= 0.78788 && 0.78788 <= hi + 1e-5, "[{lo}, {hi}]");
}

#[test]
fn report_embeds_config_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("fam_rot.json");
    let first = dir.path().join("a");
    assert_eq!(affdim(&["dim", "--config", cfg.to_str().unwrap(), "--depth", "8"], &first), 0);
    let rep = report(&first);
    assert_eq!(rep.command, "dim");
    assert_eq!(rep.config, parse_config(&fs::read_to_string(&cfg).unwrap()).unwrap());
    assert_eq!(rep.config_sha256.len(), 64);

    let embedded = dir.path().join("embedded.json");
    fs::write(&embedded, rep.config.to_json()).unwrap();
    let second = dir.path().join("b");
    assert_eq!(affdim(&["dim", "--config", embedded.to_str().unwrap(), "--depth", "8"], &second), 0);
    assert_eq!(read(&first, "dim.csv"), read(&second, "dim.csv"));
    assert_eq!(rep.outputs, report(&second).outputs);
}

#[test]
fn check_sep_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = config("overlapping.json");
    assert_eq!(affdim(&["check-sep", "--config", bad.to_str().unwrap()], dir.path()), 2);
    let cert: serde_json::Value = serde_json::from_str(&read(dir.path(), "separation.json")).unwrap();
    assert_eq!(cert["passed"], false);
    let good = config("fam_rot.json");
    assert_eq!(affdim(&["check-sep", "--config", good.to_str().unwrap()], dir.path()), 0);
    // a config without region_U cannot be checked
    let none = config("fam_scalar.json");
    assert_eq!(affdim(&["check-sep", "--config", none.to_str().unwrap()], dir.path()), 1);
}

#[test]
fn sweep_writes_n_plus_one_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("fam_rot.json");
    let args = ["sweep", "--config", cfg.to_str().unwrap(), "--param", "0", "--steps", "8", "--depth", "6"];
    assert_eq!(affdim(&args, dir.path()), 0);
    let csv = read(dir.path(), "sweep.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,s_lower,depth");
    assert_eq!(lines.len(), 1 + 9);
    assert!(lines[1..].iter().all(|l| l.ends_with(",6")));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, fs::read_to_string(config("fam_scalar.json")).unwrap().replace("\"rho\": 0.5", "\"rho\": 1.0")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_affdim")).args(["dim", "--config", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contraction violated"));
    assert_eq!(affdim(&["dim", "--config", "/nonexistent.json"], dir.path()), 1);
    assert_eq!(affdim(&["frobnicate"], dir.path()), 1);
    let help = Command::new(env!("CARGO_BIN_EXE_affdim")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout);
    for cmd in ["dim", "sweep", "check-sep", "render", "boxdim", "exceptional", "delta", "witness"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}

#[test]
fn exceptional_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("exceptional_demo.json");
    assert_eq!(affdim(&["exceptional", "--config", cfg.to_str().unwrap(), "--j", "0", "--i", "0"], dir.path()), 0);
    let rep: serde_json::Value = serde_json::from_str(&read(dir.path(), "exceptional.json")).unwrap();
    assert_eq!(rep["strict_gap"], true);
    assert_eq!(rep["status"], "strict_gap");
    // the rank-one map cannot play the invertible role
    assert_eq!(affdim(&["exceptional", "--config", cfg.to_str().unwrap(), "--j", "0", "--i", "1"], dir.path()), 1);
}

#[test]
fn boxdim_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("cantor.json");
    let run = |sub: &str, seed: &str| {
        let out = dir.path().join(sub);
        let args = ["boxdim", "--config", cfg.to_str().unwrap(), "--points", "50000", "--seed", seed, "--k-max", "9", "--export-points"];
        assert_eq!(affdim(&args, &out), 0);
        (read(&out, "boxdim.csv"), read(&out, "points.csv"))
    };
    let a = run("a", "3");
    assert_eq!(a, run("b", "3"));
    assert_ne!(a.1, run("c", "4").1);
    assert!(a.0.starts_with("k,count\n"));
    assert!(a.1.starts_with("x,y\n"));
    assert_eq!(a.1.lines().count(), 50_001);
}

#[test]
fn render_delta_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("fam_rot.json");
    let c = cfg.to_str().unwrap();
    assert_eq!(affdim(&["render", "--config", c, "--levels", "2"], dir.path()), 0);
    assert!(read(dir.path(), "render.svg").starts_with("<svg"));

    assert_eq!(affdim(&["delta", "--config", c, "--j", "0", "--iword", "0,1", "--jword", "0,1"], dir.path()), 0);
    let delta = read(dir.path(), "delta.csv");
    assert!(delta.starts_with("value,tail_bound\n0.00000000000e0,"), "{delta}");
    assert_eq!(affdim(&["delta", "--config", c, "--j", "0", "--iword", "", "--jword", "1"], dir.path()), 1);

    assert_eq!(affdim(&["witness", "--config", c, "--j", "0", "--k1", "0", "--k2", "2", "--iword", "0"], dir.path()), 0);
    let w: serde_json::Value = serde_json::from_str(&read(dir.path(), "witness.json")).unwrap();
    assert!(w["alpha"].as_f64().unwrap() >= 0.0);
    assert_eq!(affdim(&["witness", "--config", c, "--j", "0", "--k1", "1", "--k2", "1"], dir.path()), 1);
}
