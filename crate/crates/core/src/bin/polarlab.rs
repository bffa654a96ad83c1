use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polarlab::lab::{self, Chart, RawConfig};
use polarlab::rational;
use polarlab::roots::isolate_roots;
use polarlab::{dilate, polar_derivative_iter, ExtendedPoint, FormalPolynomial};

#[derive(Parser)]
#[command(name = "polarlab", version, about = "Polar derivatives, root isolation and polar free power experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Apply D_α (or ∂ for α = inf) k times and print the result as JSON.
    Derive {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Certified root isolation; prints the root profile as JSON.
    Roots {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value = "1/1073741824")]
        tol: String,
    },
    /// Histogram of the roots as CSV.
    Hist {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 32)]
        bins: usize,
        #[arg(long, default_value = "linear")]
        chart: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment from a TOML file and/or flags. Exits 1 when any row fails.
    Run(RunArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// `coeffs:…`, `roots:…`, `laguerre:n:λ`, `cosine:n`, `hyper:n:b…:a…` or polynomial JSON.
    #[arg(long)]
    poly: String,
    /// Dilate the polynomial's roots by this factor first.
    #[arg(long)]
    dilate: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    pole: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    ladder: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    instances: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn load(args: &PolyArgs) -> AnyResult<FormalPolynomial> {
    let p = lab::parse_polynomial(&args.poly)?;
    Ok(match &args.dilate {
        Some(c) => dilate(&p, &rational::parse(c)?)?,
        None => p,
    })
}

fn output(path: Option<&PathBuf>) -> AnyResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(args: RunArgs) -> AnyResult<bool> {
    let mut raw = match &args.config {
        Some(path) => RawConfig::from_toml(&std::fs::read_to_string(path)?)?,
        None => RawConfig::default(),
    };
    let mut flags = RawConfig::default();
    let pairs = [
        ("experiment", &args.experiment),
        ("family", &args.family),
        ("lambda", &args.lambda),
        ("pole", &args.pole),
        ("s", &args.s),
        ("t", &args.t),
        ("weights", &args.weights),
        ("ladder", &args.ladder),
        ("tol", &args.tol),
        ("seed", &args.seed),
        ("instances", &args.instances),
        ("out", &args.out),
        ("format", &args.format),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            flags.set(key, v)?;
        }
    }
    raw = raw.merge(flags);
    let cfg = raw.validate()?;
    let records = lab::run(&cfg)?;
    lab::write_records(output(cfg.out.as_ref())?, &records, cfg.format)?;
    Ok(lab::all_pass(&records))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: AnyResult<bool> = (|| match cli.command {
        Command::Derive { poly, alpha, times } => {
            let p = load(&poly)?;
            let n = p.formal_degree();
            let target = n.checked_sub(times).ok_or(polarlab::Error::TargetDegree { target: times, formal: n })?;
            let d = polar_derivative_iter(&p, &ExtendedPoint::parse(&alpha)?, target)?;
            println!("{}", serde_json::to_string(&d)?);
            Ok(true)
        }
        Command::Roots { poly, tol } => {
            let profile = isolate_roots(&load(&poly)?, &rational::parse(&tol)?)?;
            println!("{}", serde_json::to_string(&profile)?);
            Ok(true)
        }
        Command::Hist { poly, bins, chart, out } => {
            let profile = isolate_roots(&load(&poly)?, &rational::frac(1, 1 << 30))?;
            let rows = lab::emit_histogram(&profile, bins, chart.parse::<Chart>()?)?;
            lab::write_histogram_csv(output(out.as_ref())?, &rows)?;
            Ok(true)
        }
        Command::Run(args) => run(args),
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
