//! `matfn`: Jack polynomials, hypergeometric functions of a matrix
//! argument, Stiefel volumes, Haar sampling, and Monte Carlo
//! verification campaigns over the real normed division algebras.
//!
//! Exit codes: 0 success / gate pass, 1 verification gate fail,
//! 2 usage or domain error.

use matfn_cli::{campaign, matrix};

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matfn_core::algebra::{hermitian_eigenvalues, AlgebraTag};
use matfn_core::hyper::{hyper_0f1, hyper_pfq, stiefel_log_volume, SeriesResult};
use matfn_core::jack::{build_jack_table, jack_c};
use matfn_core::montecarlo::{haar_sample, RandomStream, DEFAULT_CHUNK_SIZE};
use matfn_core::partitions::{partitions_of, Partition};
use serde_json::{json, Map, Value};

use campaign::{gate_passes, run_campaign, write_rows, CampaignConfig, CheckKind};

#[derive(Parser)]
#[command(name = "matfn", version, about = "Matrix-argument special functions and Haar Monte Carlo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a Jack polynomial C_κ^β at a point.
    Jack(JackArgs),
    /// Evaluate a truncated hypergeometric function of a matrix argument.
    Hyper(HyperArgs),
    /// Log-volume of a Stiefel manifold V^β_{m,n}.
    Volume(VolumeArgs),
    /// Draw one Haar-distributed Stiefel frame.
    Sample(SampleArgs),
    /// Dump exact Jack coefficient tables as JSON.
    Table(TableArgs),
    /// Run a Monte Carlo verification campaign.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct JackArgs {
    /// Algebra dimension: 1, 2, 4 or 8.
    #[arg(long)]
    beta: u32,
    /// Partition, e.g. "3,1".
    #[arg(long)]
    kappa: String,
    /// Evaluation point (eigenvalue list), e.g. "1,2,3".
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Also print the exact monomial expansion.
    #[arg(long)]
    expand: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum HyperKind {
    #[value(name = "0F1")]
    ZeroF1,
    #[value(name = "pFq")]
    PFq,
}

#[derive(Args)]
struct HyperArgs {
    /// Series type: 0F1 or pFq.
    #[arg(long = "type", value_enum)]
    kind: HyperKind,
    /// Numerator parameters (pFq only), e.g. "0.5,1.5".
    #[arg(long, value_delimiter = ',')]
    a: Vec<f64>,
    /// Denominator parameters; exactly one for 0F1.
    #[arg(long, value_delimiter = ',')]
    b: Vec<f64>,
    /// Eigenvalues of the (self-adjoint) argument, e.g. "0.25".
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Self-adjoint matrix file (JSON) instead of --x.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    beta: u32,
    /// Truncation degree.
    #[arg(long, default_value_t = 12)]
    deg: u32,
}

#[derive(Args)]
struct VolumeArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    beta: u32,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    seed: u64,
    /// Substream index; distinct streams are independent draws.
    #[arg(long, default_value_t = 0)]
    stream: u64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    max_weight: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Moment,
    Odd,
    Bessel,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identity to test per cell.
    #[arg(long, value_enum, default_value = "moment")]
    check: CheckArg,
    /// Algebra dimensions, e.g. "1,2,4". Default: 1,2,4.
    #[arg(long, value_delimiter = ',')]
    beta: Vec<u32>,
    /// Row counts; zipped with --n into shape pairs.
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    /// Column counts; zipped with --m into shape pairs.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Moment orders (moment) or odd powers (odd); ignored for bessel.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 4.0)]
    threshold: f64,
    /// Series truncation degree for bessel cells.
    #[arg(long, default_value_t = 12)]
    deg: u32,
    /// Explicit X matrix file (JSON); requires a single --beta.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Emit CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rayon worker threads (0 = automatic).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn parse_tag(beta: u32) -> Result<AlgebraTag, String> {
    AlgebraTag::from_beta(beta).ok_or_else(|| format!("beta must be one of 1,2,4,8; got {beta}"))
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    let parts: Vec<u32> = if text.is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad partition part {p:?}: {e}")))
            .collect::<Result<_, _>>()?
    };
    Partition::new(parts).map_err(|e| e.to_string())
}

fn partition_key(p: &Partition) -> String {
    p.parts().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn load_matrix(path: &PathBuf, tag: AlgebraTag) -> Result<matfn_core::algebra::MatrixF, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    matrix::matrix_from_json(&value, tag)
}

fn series_json(r: &SeriesResult) -> Value {
    json!({"value": r.value, "max_degree": r.max_degree, "last_shell": r.last_shell})
}

fn cmd_jack(args: &JackArgs) -> Result<Value, String> {
    let tag = parse_tag(args.beta)?;
    let kappa = parse_partition(&args.kappa)?;
    let table = build_jack_table(kappa.weight(), tag);
    let value = jack_c(&table, &kappa, &args.x).map_err(|e| e.to_string())?;
    let mut out = Map::new();
    out.insert("beta".into(), json!(args.beta));
    out.insert("kappa".into(), json!(kappa.parts()));
    out.insert("x".into(), json!(args.x));
    out.insert("value".into(), json!(value));
    if args.expand {
        let mut expansion = Map::new();
        for (lambda, coeff) in table.coefficients(&kappa).unwrap() {
            expansion.insert(partition_key(lambda), json!(coeff.to_string()));
        }
        out.insert("expansion".into(), Value::Object(expansion));
    }
    Ok(Value::Object(out))
}

fn cmd_hyper(args: &HyperArgs) -> Result<Value, String> {
    let tag = parse_tag(args.beta)?;
    let x: Vec<f64> = match &args.matrix {
        Some(path) => {
            let m = load_matrix(path, tag)?;
            hermitian_eigenvalues(&m).map_err(|e| e.to_string())?.values().to_vec()
        }
        None => args.x.clone(),
    };
    let table = build_jack_table(args.deg, tag);
    let result = match args.kind {
        HyperKind::ZeroF1 => {
            if args.b.len() != 1 || !args.a.is_empty() {
                return Err("0F1 takes exactly one --b and no --a".into());
            }
            hyper_0f1(args.b[0], &x, tag, &table, args.deg)
        }
        HyperKind::PFq => hyper_pfq(&args.a, &args.b, &x, tag, &table, args.deg),
    }
    .map_err(|e| e.to_string())?;
    Ok(series_json(&result))
}

fn cmd_volume(args: &VolumeArgs) -> Result<Value, String> {
    let tag = parse_tag(args.beta)?;
    let log_volume = stiefel_log_volume(args.m, args.n, tag).map_err(|e| e.to_string())?;
    Ok(json!({
        "beta": args.beta, "m": args.m, "n": args.n,
        "log_volume": log_volume, "volume": log_volume.exp(),
    }))
}

fn cmd_sample(args: &SampleArgs) -> Result<Value, String> {
    let tag = parse_tag(args.beta)?;
    let mut stream = RandomStream::new(args.seed, args.stream);
    let h = haar_sample(args.m, args.n, tag, &mut stream).map_err(|e| e.to_string())?;
    Ok(json!({
        "beta": args.beta, "m": args.m, "n": args.n,
        "seed": args.seed, "stream": args.stream,
        "h": matrix::matrix_to_json(&h),
    }))
}

fn cmd_table(args: &TableArgs) -> Result<Value, String> {
    let tag = parse_tag(args.beta)?;
    let table = build_jack_table(args.max_weight, tag);
    let mut tables = Map::new();
    for weight in 0..=args.max_weight {
        for kappa in partitions_of(weight, weight as usize) {
            let mut expansion = Map::new();
            for (lambda, coeff) in table.coefficients(&kappa).unwrap() {
                expansion.insert(partition_key(lambda), json!(coeff.to_string()));
            }
            tables.insert(partition_key(&kappa), Value::Object(expansion));
        }
    }
    Ok(json!({
        "beta": args.beta,
        "alpha": table.alpha().to_string(),
        "max_weight": args.max_weight,
        "tables": Value::Object(tables),
    }))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let check = match args.check {
        CheckArg::Moment => CheckKind::Moment,
        CheckArg::Odd => CheckKind::Odd,
        CheckArg::Bessel => CheckKind::Bessel,
    };
    let betas = if args.beta.is_empty() { vec![1, 2, 4] } else { args.beta.clone() };
    if args.m.len() != args.n.len() {
        return Err("--m and --n must have the same length".into());
    }
    let default_pairs = vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];
    let explicit_x = match &args.matrix {
        Some(path) => {
            if betas.len() != 1 {
                return Err("--matrix requires a single --beta".into());
            }
            Some(load_matrix(path, parse_tag(betas[0])?)?)
        }
        None => None,
    };
    let pairs = match (&explicit_x, args.m.is_empty()) {
        (Some(x), _) => vec![(x.rows(), x.cols())],
        (None, true) => default_pairs,
        (None, false) => args.m.iter().copied().zip(args.n.iter().copied()).collect(),
    };
    let ks = if args.k.is_empty() {
        match check {
            CheckKind::Odd => vec![1, 3, 5],
            _ => vec![0, 1, 2, 3, 4],
        }
    } else {
        args.k.clone()
    };
    let config = CampaignConfig {
        check,
        betas,
        pairs,
        ks,
        samples: args.samples,
        seed: args.seed,
        threshold: args.threshold,
        max_degree: args.deg,
        chunk_size: DEFAULT_CHUNK_SIZE,
        explicit_x,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
        .map_err(|e| e.to_string())?;
    let rows = pool.install(|| run_campaign(&config))?;
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            write_rows(&mut buf, &rows, args.csv).map_err(|e| e.to_string())?;
            fs::write(path, buf).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            write_rows(&mut stdout.lock(), &rows, args.csv).map_err(|e| e.to_string())?;
        }
    }
    let evaluated = rows.iter().filter(|r| r.pass.is_some()).count();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let skipped = rows.len() - evaluated;
    let gate = gate_passes(&rows);
    eprintln!(
        "cells: {} evaluated: {evaluated} passed: {passed} skipped: {skipped} gate: {}",
        rows.len(),
        if gate { "PASS" } else { "FAIL" }
    );
    Ok(if gate { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let value = match &cli.command {
        Command::Jack(args) => cmd_jack(args)?,
        Command::Hyper(args) => cmd_hyper(args)?,
        Command::Volume(args) => cmd_volume(args)?,
        Command::Sample(args) => cmd_sample(args)?,
        Command::Table(args) => cmd_table(args)?,
        Command::Verify(args) => return cmd_verify(args),
    };
    let mut stdout = std::io::stdout();
    writeln!(stdout, "{value}").map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
