//! Subcommand driver behind the `affdim` binary.
//!
//! Exit codes: 0 success, 1 input error, 2 certificate failure, 3
//! inconclusive dimension gap. Every run that gets past input validation
//! writes `report.json` into `--out`; CSV and SVG outputs sit beside it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::attractor::{box_dim_estimate, chaos_game, render_levels, DEFAULT_BURN_IN};
use crate::config::{parse_config, FamilyConfig};
use crate::dimension::{affinity_dimension, solve_sj_lower, DimensionError, SolverOptions};
use crate::exceptional::{delta_truncated, dimension_drop, line_system, vary, DropStatus, ExceptionalError};
use crate::separation::{check_convex_separation, projection_witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "affdim", version, about = "Affinity-dimension brackets for planar IFS with rank-one maps")]
pub struct Cli {
    /// Family configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Truncation depth; overrides the config.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Bisection tolerance; overrides the config.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Random seed; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Affinity-dimension bracket and s_reg bracket -> dim.csv
    Dim,
    /// s_j lower bound over a grid of alpha_j -> sweep.csv
    Sweep {
        /// Rank-one index j (0-based within the singular maps).
        #[arg(long)]
        param: usize,
        #[arg(long, default_value_t = 64)]
        steps: usize,
    },
    /// Uniform convex separation certificate -> separation.json
    CheckSep,
    /// Cylinder drawing -> render.svg
    Render {
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Chaos-game cloud and box counting -> boxdim.csv
    Boxdim {
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
        #[arg(long, default_value_t = 4)]
        k_min: u32,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        /// Also write the cloud to points.csv.
        #[arg(long)]
        export_points: bool,
    },
    /// Exceptional parameter and dimension drop -> exceptional.json
    Exceptional {
        /// Rank-one index j.
        #[arg(long)]
        j: usize,
        /// Flat map index i (regular maps first, then singular).
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Truncated Delta between two words of the line system of j -> delta.csv
    Delta {
        #[arg(long)]
        j: usize,
        /// Comma-separated indices into the line system.
        #[arg(long)]
        iword: String,
        #[arg(long)]
        jword: String,
        #[arg(long, default_value_t = 32)]
        terms: usize,
        /// Word length of the line system.
        #[arg(long, default_value_t = 1)]
        line_depth: usize,
    },
    /// Projection witness angle -> witness.json
    Witness {
        #[arg(long)]
        j: usize,
        /// Flat index of the first body.
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Comma-separated regular letters.
        #[arg(long, default_value = "")]
        iword: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dim => "dim",
            Command::Sweep { .. } => "sweep",
            Command::CheckSep => "check-sep",
            Command::Render { .. } => "render",
            Command::Boxdim { .. } => "boxdim",
            Command::Exceptional { .. } => "exceptional",
            Command::Delta { .. } => "delta",
            Command::Witness { .. } => "witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    pub config_sha256: String,
    pub config: FamilyConfig,
    pub outputs: serde_json::Value,
    pub exit_code: i32,
    pub wall_time_s: f64,
    pub tool_version: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn input(msg: impl ToString) -> CliError {
    CliError { code: EXIT_INPUT, message: msg.to_string() }
}

/// Twelve significant digits, locale-free.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_word(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| t.parse().map_err(|_| input(format!("bad word letter {t:?}")))).collect()
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::write(dir.join(name), contents).map_err(|e| input(format!("cannot write {name}: {e}")))
}

struct Ctx {
    cfg: FamilyConfig,
    opts: SolverOptions,
    seed: u64,
    out: PathBuf,
}

/// Runs one subcommand and returns `(outputs, exit code)`.
fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<(serde_json::Value, i32), CliError> {
    let fam = ctx.cfg.family().map_err(input)?;
    let base = ctx.cfg.param();
    let opts = &ctx.opts;
    match cmd {
        Command::Dim => {
            let ifs = fam.instantiate(&base).map_err(input)?;
            let rep = match affinity_dimension(&ifs, opts) {
                Ok(r) => r,
                Err(e @ DimensionError::Inconsistent { .. }) => {
                    return Ok((json!({ "error": e.to_string() }), EXIT_CERTIFICATE));
                }
                Err(e) => return Err(input(e)),
            };
            let mut csv = String::from("quantity,lower,upper,depth,certified\n");
            let b = rep.bracket;
            let _ = writeln!(csv, "affinity,{},{},{},{}", fmt_f(b.lower), fmt_f(b.upper), b.depth, b.certified_upper);
            let r = rep.s_reg;
            let _ = writeln!(csv, "s_reg,{},{},{},{}", fmt_f(r.lower), fmt_f(r.upper), r.depth, r.certified_upper);
            for p in &rep.per_j {
                let _ = writeln!(csv, "s_j[{}],{},{},{},{}", p.j, fmt_f(p.lower), fmt_f(p.upper), b.depth, p.certified);
            }
            write(&ctx.out, "dim.csv", &csv)?;
            Ok((serde_json::to_value(&rep).expect("serializable"), EXIT_OK))
        }
        Command::Sweep { param, steps } => {
            let s = fam.singular().get(*param).ok_or_else(|| input(format!("no singular map {param}")))?;
            if *steps == 0 {
                return Err(input("--steps must be positive"));
            }
            let period = std::f64::consts::TAU / s.beta;
            let mut csv = String::from("alpha,s_lower,depth\n");
            for k in 0..=*steps {
                let alpha = period * k as f64 / *steps as f64;
                let ifs = fam.instantiate(&vary(&fam, &base, *param, alpha)).map_err(input)?;
                let lo = solve_sj_lower(&ifs, *param, opts.depth, opts.tol, opts.prune);
                let _ = writeln!(csv, "{},{},{}", fmt_f(alpha), fmt_f(lo.value), opts.depth);
            }
            write(&ctx.out, "sweep.csv", &csv)?;
            Ok((json!({ "rows": steps + 1, "file": "sweep.csv" }), EXIT_OK))
        }
        Command::CheckSep => {
            let u = ctx.cfg.region().map_err(input)?.ok_or_else(|| input("check-sep needs region_U in the config"))?;
            let cert = check_convex_separation(&fam, &u);
            write(&ctx.out, "separation.json", &serde_json::to_string_pretty(&cert).expect("serializable"))?;
            let code = if cert.passed { EXIT_OK } else { EXIT_CERTIFICATE };
            Ok((serde_json::to_value(&cert).expect("serializable"), code))
        }
        Command::Render { levels } => {
            let u = ctx.cfg.region().map_err(input)?.ok_or_else(|| input("render needs region_U in the config"))?;
            let drawing = render_levels(&fam, &base, &u, *levels).map_err(input)?;
            write(&ctx.out, "render.svg", &drawing.to_svg(800))?;
            Ok((json!({ "items": drawing.items.len(), "file": "render.svg" }), EXIT_OK))
        }
        Command::Boxdim { points, k_min, k_max, export_points } => {
            if *points == 0 {
                return Err(input("--points must be positive"));
            }
            let ifs = fam.instantiate(&base).map_err(input)?;
            let cloud = chaos_game(&ifs, *points, ctx.seed, DEFAULT_BURN_IN);
            let series = box_dim_estimate(&cloud, *k_min, *k_max).map_err(input)?;
            let mut csv = Vec::new();
            series.write_csv(&mut csv).expect("in-memory write");
            write(&ctx.out, "boxdim.csv", &String::from_utf8(csv).expect("ascii"))?;
            if *export_points {
                let mut pts = Vec::new();
                cloud.write_csv(&mut pts).expect("in-memory write");
                write(&ctx.out, "points.csv", &String::from_utf8(pts).expect("ascii"))?;
            }
            Ok((serde_json::to_value(&series).expect("serializable"), EXIT_OK))
        }
        Command::Exceptional { j, i, grid } => match dimension_drop(&fam, &base, *j, *i, *grid, opts) {
            Ok(rep) => {
                write(&ctx.out, "exceptional.json", &serde_json::to_string_pretty(&rep).expect("serializable"))?;
                let code = if rep.status == DropStatus::StrictGap { EXIT_OK } else { EXIT_INCONCLUSIVE };
                Ok((serde_json::to_value(&rep).expect("serializable"), code))
            }
            Err(e @ ExceptionalError::NoSignChange { .. }) => Ok((json!({ "error": e.to_string() }), EXIT_CERTIFICATE)),
            Err(e) => Err(input(e)),
        },
        Command::Delta { j, iword, jword, terms, line_depth } => {
            let ifs = fam.instantiate(&base).map_err(input)?;
            if *j >= ifs.n_singular() {
                return Err(input(format!("no singular map {j}")));
            }
            let system = line_system(&ifs, *j, *line_depth);
            let d = delta_truncated(&system, &parse_word(iword)?, &parse_word(jword)?, *terms).map_err(input)?;
            write(&ctx.out, "delta.csv", &format!("value,tail_bound\n{},{}\n", fmt_f(d.value), fmt_f(d.tail_bound)))?;
            Ok((serde_json::to_value(d).expect("serializable"), EXIT_OK))
        }
        Command::Witness { j, k1, k2, iword } => {
            let u = ctx.cfg.region().map_err(input)?.ok_or_else(|| input("witness needs region_U in the config"))?;
            let word = parse_word(iword)?;
            match projection_witness(&fam, &u, &word, *j, *k1, *k2) {
                Ok(alpha) => {
                    let v = json!({ "alpha": alpha, "j": j, "k1": k1, "k2": k2, "iword": word });
                    write(&ctx.out, "witness.json", &serde_json::to_string_pretty(&v).expect("serializable"))?;
                    Ok((v, EXIT_OK))
                }
                Err(e @ crate::separation::SeparationError::Intersecting(_)) => Ok((json!({ "error": e.to_string() }), EXIT_CERTIFICATE)),
                Err(e @ crate::separation::SeparationError::NoWitness(_)) => Ok((json!({ "error": e.to_string() }), EXIT_CERTIFICATE)),
                Err(e) => Err(input(e)),
            }
        }
    }
}

fn execute(cli: &Cli, args: Vec<String>) -> Result<i32, CliError> {
    let start = Instant::now();
    let path = cli.config.as_ref().ok_or_else(|| input("--config is required"))?;
    let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let cfg = parse_config(&text).map_err(input)?;
    let mut opts = cfg.solver_options();
    if let Some(d) = cli.depth {
        opts.depth = d;
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(input("--tol must be positive"));
        }
        opts.tol = t;
    }
    let seed = cli.seed.unwrap_or(cfg.seed);
    fs::create_dir_all(&cli.out).map_err(|e| input(format!("cannot create {}: {e}", cli.out.display())))?;
    let ctx = Ctx { cfg, opts, seed, out: cli.out.clone() };
    let (outputs, code) = match cli.threads {
        Some(0) => return Err(input("--threads must be positive")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(input)?;
            pool.install(|| dispatch(&cli.command, &ctx))?
        }
        None => dispatch(&cli.command, &ctx)?,
    };
    let report = RunReport {
        command: cli.command.name().to_string(),
        args,
        config_sha256: format!("{:x}", Sha256::digest(text.as_bytes())),
        config: ctx.cfg,
        outputs,
        exit_code: code,
        wall_time_s: start.elapsed().as_secs_f64(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    write(&cli.out, "report.json", &serde_json::to_string_pretty(&report).expect("serializable"))?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let printable = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, printable) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_fixed() {
        assert_eq!(fmt_f(0.787_884_911_5), "7.87884911500e-1");
        assert_eq!(fmt_f(0.0), "0.00000000000e0");
    }

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("0, 1,2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert!(parse_word("a").is_err());
    }

    #[test]
    fn bad_flags_are_input_errors() {
        assert_eq!(run(["affdim", "dim", "--bogus"]), EXIT_INPUT);
        assert_eq!(run(["affdim", "dim"]), EXIT_INPUT);
    }
}
