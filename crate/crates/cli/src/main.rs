use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use k3disc::family::{k_value, r_value, weierstrass, FamilyPoint};
use k3disc::grading::{weighted_degree, WeightVector};
use k3disc::kodaira::scan_fibers;
use k3disc::modular::DEFAULT_PRIME;
use k3disc::poly::parse_with_inferred_vars;
use k3disc::verify::{self, CheckSpec, RunOptions, DEFAULT_SEED};
use k3disc::{IntegerRing, MultiPoly, PolyRing, PrimeField};

#[derive(Parser)]
#[command(name = "k3disc", version, about = "Exact checks for a weighted elliptic K3 family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered checks.
    ListChecks,
    /// Run `all` checks or one by name and write a JSON report.
    Verify(VerifyArgs),
    /// Read, normalize and measure polynomials in text form.
    Poly {
        #[command(subcommand)]
        action: PolyAction,
    },
    /// Classify the singular fibers of one family member over a prime field.
    Scan {
        /// JSON object with keys t4 ... t42; absent keys are zero.
        #[arg(long = "t")]
        point: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// `all` or a check name.
    target: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    prime: Option<u64>,
    /// Active parameter weights of a slice, e.g. `4,28,42`; repeat to try several in order.
    #[arg(long = "slice")]
    slices: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    /// Extra check parameter `key=value`, e.g. `n=3`.
    #[arg(long = "param")]
    params: Vec<String>,
    /// TOML file with defaults; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Record wall-clock times; reports are then no longer reproducible.
    #[arg(long)]
    timings: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PolyAction {
    /// Print the terms as JSON.
    Parse(PolyFile),
    /// Print the canonical text form.
    Print(PolyFile),
    /// Weighted degree and homogeneity.
    Degree {
        #[command(flatten)]
        file: PolyFile,
        /// Comma list of `name:weight`.
        #[arg(long)]
        weights: String,
    },
}

#[derive(clap::Args)]
struct PolyFile {
    file: PathBuf,
    /// Variable order, comma separated; default is order of appearance.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    seed: Option<u64>,
    prime: Option<u64>,
    workers: Option<usize>,
    timings: Option<bool>,
    #[serde(default)]
    checks: BTreeMap<String, CheckConfig>,
}

#[derive(Debug, Default, Deserialize)]
struct CheckConfig {
    slices: Option<Vec<Vec<u32>>>,
    trials: Option<usize>,
    #[serde(flatten)]
    extra: BTreeMap<String, toml::Value>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_slice(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|w| w.trim().trim_start_matches('t').parse().with_context(|| format!("bad slice weight `{w}`")))
        .collect()
}

fn toml_scalar(v: &toml::Value) -> Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Array(a) => a.iter().map(toml_scalar).collect::<Result<Vec<_>>>()?.join(","),
        other => bail!("unsupported parameter value {other}"),
    })
}

/// Specs for the run: config entries first, flags on top. With `all`, flags
/// reach only the checks that accept them.
fn build_specs(args: &VerifyArgs, cfg: &ConfigFile) -> Result<Vec<CheckSpec>> {
    let mut specs = if args.target == "all" {
        CheckSpec::all()
    } else {
        vec![CheckSpec::new(&args.target)]
    };
    let single = args.target != "all";
    let flag_slices = args.slices.iter().map(|s| parse_slice(s)).collect::<Result<Vec<_>>>()?;
    let flag_params = args
        .params
        .iter()
        .map(|kv| kv.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())))
        .collect::<Option<Vec<_>>>()
        .context("--param expects key=value")?;
    for spec in &mut specs {
        let info = verify::find_check(&spec.name);
        if let Some(c) = cfg.checks.get(&spec.name) {
            spec.params.slices = c.slices.clone();
            spec.params.trials = c.trials;
            for (k, v) in &c.extra {
                spec.params.extra.insert(k.clone(), toml_scalar(v)?);
            }
        }
        let accepts = |f: fn(&verify::CheckInfo) -> bool| single || info.is_some_and(f);
        if !flag_slices.is_empty() && accepts(|i| i.uses_slices) {
            spec.params.slices = Some(flag_slices.clone());
        }
        if args.trials.is_some() && accepts(|i| i.uses_trials) {
            spec.params.trials = args.trials;
        }
        for (k, v) in &flag_params {
            if single || info.is_some_and(|i| i.params.contains(&k.as_str())) {
                spec.params.extra.insert(k.clone(), v.clone());
            }
        }
    }
    if let Some(unknown) = cfg.checks.keys().find(|k| verify::find_check(k).is_none()) {
        bail!("config names unknown check `{unknown}`");
    }
    Ok(specs)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let cfg: ConfigFile = match &args.config {
        Some(p) => toml::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None => ConfigFile::default(),
    };
    let specs = build_specs(&args, &cfg)?;
    let opts = RunOptions {
        seed: args.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
        prime: args.prime.or(cfg.prime).unwrap_or(DEFAULT_PRIME),
        workers: args.workers.or(cfg.workers).unwrap_or(0),
        timings: args.timings || cfg.timings.unwrap_or(false),
    };
    let report = verify::run_checks(&specs, &opts)?;
    let text = report.to_json_string();
    match &args.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    for c in &report.checks {
        eprintln!("{:<24} {}", c.name, serde_json::to_value(c.status)?.as_str().unwrap_or("?"));
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn load_poly(f: &PolyFile) -> Result<MultiPoly<IntegerRing>> {
    let text = read(&f.file)?;
    Ok(match &f.vars {
        Some(v) => {
            let names: Vec<&str> = v.split(',').map(str::trim).collect();
            PolyRing::new(IntegerRing, &names).parse(&text)?
        }
        None => parse_with_inferred_vars(IntegerRing, &text)?.1,
    })
}

fn run_poly(action: PolyAction) -> Result<()> {
    match action {
        PolyAction::Print(f) => println!("{}", load_poly(&f)?),
        PolyAction::Parse(f) => {
            let p = load_poly(&f)?;
            let terms: Vec<_> = p.terms().rev().map(|(m, c)| json!({ "coeff": c.to_string(), "exps": m.exps() })).collect();
            let out = json!({ "vars": p.ring().vars(), "terms": terms, "canonical": p.to_string() });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        PolyAction::Degree { file, weights } => {
            let p = load_poly(&file)?;
            let w: WeightVector = weights.parse()?;
            let d = weighted_degree(&p, &w)?;
            println!("{}", serde_json::to_string(&json!({ "degree": d.degree, "homogeneous": d.homogeneous }))?);
        }
    }
    Ok(())
}

fn run_scan(point: &Path, prime: u64) -> Result<()> {
    let field = PrimeField::try_new(prime).with_context(|| format!("{prime} is not a prime below 2^63"))?;
    let json: serde_json::Value = serde_json::from_str(&read(point)?)?;
    let t = FamilyPoint::from_json(field, &json)?;
    let scan = scan_fibers(&weierstrass(&t))?;
    let vals = t.scalars().expect("numeric point");
    let mut out = scan.to_json(|e| e.to_string());
    out["prime"] = json!(prime);
    out["euler_sum"] = json!(scan.euler_sum());
    out["k"] = json!(k_value(&field, &vals)?);
    out["r"] = json!(r_value(&field, &vals)?);
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::ListChecks => {
            for c in verify::registry() {
                println!("{:<24} {}", c.name, c.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => run_verify(args),
        Command::Poly { action } => run_poly(action).map(|_| ExitCode::SUCCESS),
        Command::Scan { point, prime } => run_scan(&point, prime).map(|_| ExitCode::SUCCESS),
    };
    res.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
