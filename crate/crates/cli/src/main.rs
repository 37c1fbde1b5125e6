use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oge::cascade::{build_cascade, envelope_f64, verify_bounds, CascadeParams, Certificate, Target};
use oge::entropy_report::{entropy_numbers_with, entropy_profile, summary_table};
use oge::growth_order::{compare_sequences, GrowthSequence, DEFAULT_TAIL};
use oge::homology::{analyze, power_norm_growth, shub_exponent, IntMatrix};
use oge::Error;
use serde_json::{json, Value};

mod config;

use config::{parse_delta_rule, parse_eps, read_params, ExperimentConfig, SystemArgs};

#[derive(Parser, Debug)]
#[command(name = "oge", version, about = "Growth curves, entropy numbers, cascades and homology bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Scales, strictly descending, comma separated
    #[arg(long, default_value = "0.2,0.1,0.05")]
    eps: String,
    #[arg(long = "n", default_value_t = 200)]
    n_max: usize,
    /// fraction:C (delta = C eps) or fixed:D
    #[arg(long, default_value = "fraction:0.25")]
    delta_rule: String,
    /// Directory for the JSON report and per-scale TSV curves
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// ExperimentConfig JSON; replaces the system and sweep flags
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SweepArgs {
    fn resolve(&self) -> oge::Result<ExperimentConfig> {
        let cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig {
                system: self.system.to_config()?,
                eps: parse_eps(&self.eps)?,
                n_max: self.n_max,
                delta_rule: parse_delta_rule(&self.delta_rule)?,
                out: self.out.clone(),
                seed: self.seed,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy profile over the full sample
    Estimate(SweepArgs),
    /// Entropy numbers (o(f|Omega), o(f))
    Numbers(SweepArgs),
    /// Build cascade parameters and their certificate
    CascadeBuild {
        /// log2 or rootD
        #[arg(long)]
        target: String,
        #[arg(long)]
        stages: usize,
        #[arg(long, default_value_t = 10_000)]
        grid: u64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check stored cascade parameters
    CascadeVerify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        grid: u64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral radius, exponent bound and power growth of an integer action
    Homology {
        /// "1,1;0,1" or a JSON array of rows
        #[arg(long)]
        matrix: String,
        #[arg(long = "n", default_value_t = 256)]
        n_max: usize,
    },
    /// Order relation between two stored curves (TSV or JSON)
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAIL)]
        tail: f64,
    },
}

enum Failure {
    Validation(Error),
    Certificate(Value),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Write through a temporary sibling and rename.
fn write_atomic(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn estimate(args: &SweepArgs) -> Outcome {
    let cfg = args.resolve()?;
    let spec = cfg.system.build()?;
    let profile = entropy_profile(&spec, &cfg.eps, cfg.n_max, cfg.delta_rule)?;
    let report = json!({ "config": cfg, "profile": profile });
    if let Some(dir) = &cfg.out {
        for (i, c) in profile.curves.iter().enumerate() {
            write_atomic(&dir.join(format!("curve_eps{}.tsv", fmt_eps(cfg.eps[i]))), &c.to_tsv())?;
        }
        write_atomic(&dir.join("summary.txt"), &summary_table(&profile))?;
        write_atomic(&dir.join("profile.json"), &pretty(&report))?;
    }
    Ok(report)
}

fn fmt_eps(e: f64) -> String {
    format!("{e}").replace('.', "p")
}

fn numbers(args: &SweepArgs) -> Outcome {
    let cfg = args.resolve()?;
    let spec = cfg.system.build()?;
    let nums = entropy_numbers_with(&spec, &cfg.eps, cfg.n_max, cfg.delta_rule)?;
    let report = json!({
        "config": cfg,
        "numbers": [nums.omega, nums.full],
        "pretty": nums.pretty(),
        "omega_profile": nums.omega_profile,
        "full_profile": nums.full_profile,
    });
    if let Some(dir) = &cfg.out {
        write_atomic(&dir.join("numbers.json"), &pretty(&report))?;
    }
    Ok(report)
}

/// `(n, e(n), a(n))` at log-spaced `n <= min(m_K, 2^62)`.
fn envelope_tsv(p: &CascadeParams) -> String {
    let cap: u64 = p.m(p.stages()).to_string().parse().unwrap_or(1 << 62).min(1 << 62);
    let mut ns: Vec<u64> = (1..=64).collect();
    let mut x = 64f64;
    while (x as u64) < cap {
        ns.push(x as u64);
        x *= 1.25;
    }
    ns.push(cap);
    ns.sort_unstable();
    ns.dedup();
    let mut out = String::from("n\tenvelope\ttarget\n");
    for n in ns.into_iter().filter(|&n| n <= cap) {
        if let Ok(e) = envelope_f64(p, n) {
            out.push_str(&format!("{n}\t{e}\t{}\n", p.target.eval(n as f64)));
        }
    }
    out
}

fn certificate_outcome(report: Value, cert: &Certificate) -> Outcome {
    if cert.all_pass {
        Ok(report)
    } else {
        Err(Failure::Certificate(report))
    }
}

fn cascade_build(target: &str, stages: usize, grid: u64, eps: f64, out: Option<&Path>) -> Outcome {
    let target: Target = target.parse()?;
    let params = build_cascade(target, stages)?;
    let cert = verify_bounds(&params, grid, eps)?;
    let report = json!({ "params": params, "certificate": cert });
    if let Some(dir) = out {
        write_atomic(&dir.join("cascade.json"), &pretty(&report))?;
        write_atomic(&dir.join("envelope.tsv"), &envelope_tsv(&params))?;
    }
    certificate_outcome(report, &cert)
}

fn cascade_verify(path: &Path, grid: u64, eps: f64, out: Option<&Path>) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let params = read_params(&text)?;
    let cert = verify_bounds(&params, grid, eps)?;
    let report = json!({ "certificate": cert });
    if let Some(file) = out {
        write_atomic(file, &pretty(&report))?;
    }
    certificate_outcome(report, &cert)
}

fn homology(matrix: &str, n_max: usize) -> Outcome {
    let a: IntMatrix = matrix.parse()?;
    let h = analyze(&a);
    let growth = power_norm_growth(&a, n_max)?;
    let (k, note) = match shub_exponent(&a) {
        Ok(k) if k.is_integer() => (json!(k.to_integer()), Value::Null),
        Ok(k) => (json!(k.to_string()), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    let log_sp = if h.sp > 1.0 { json!(h.sp.ln()) } else { Value::Null };
    Ok(json!({
        "sp": h.sp,
        "k": k,
        "sp_bracket": h.sp_bracket,
        "log_sp": log_sp,
        "k_r": h.k_r,
        "k_c": h.k_c,
        "note": note,
        "char_poly": h.char_poly,
        "block_profile": h.block_profile,
        "power_growth": { "degree": growth.degree, "horizon": growth.horizon },
    }))
}

fn read_curve(path: &Path) -> std::result::Result<GrowthSequence<f64>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let t = text.trim_start();
    Ok(if t.starts_with('{') || t.starts_with('[') { GrowthSequence::from_json(t)? } else { GrowthSequence::from_tsv(t)? })
}

fn compare(a: &Path, b: &Path, tail: f64) -> Outcome {
    let (x, y) = (read_curve(a)?, read_curve(b)?);
    let window = x.window().min(y.window());
    let rel = compare_sequences(&x.prefix(window), &y.prefix(window), tail);
    Ok(json!({ "relation": rel, "window": window }))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Estimate(a) => estimate(&a),
        Command::Numbers(a) => numbers(&a),
        Command::CascadeBuild { target, stages, grid, eps, out } => cascade_build(&target, stages, grid, eps, out.as_deref()),
        Command::CascadeVerify { params, grid, eps, out } => cascade_verify(&params, grid, eps, out.as_deref()),
        Command::Homology { matrix, n_max } => homology(&matrix, n_max),
        Command::Compare { a, b, tail } => compare(&a, &b, tail),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            print!("{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Err(Failure::Certificate(v)) => {
            print!("{}", pretty(&v));
            eprintln!("certificate failed");
            ExitCode::from(3)
        }
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
