//! Command-line front end for the randomized identity harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use pfid::error::{Error, Result};
use pfid::harness::{all_for_regime, emit_report, exit_code, run_suite, ConfigEcho, Format, SamplerConfig, SuiteOptions};
use pfid::identities::{IdentityRegistry, Params, Regime};
use pfid::scalar::{Complex, Tolerance};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegimeArg {
    Rational,
    Trig,
    Elliptic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Verify determinant and Pfaffian identities at random sample points.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Identity name, or `all` for every identity admitting the regime.
    #[arg(long, default_value = "all")]
    identity: String,
    #[arg(long, value_enum, default_value = "rational")]
    regime: RegimeArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    mprime: Option<usize>,
    /// Trials per identity/configuration.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for approximate regimes.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Elliptic modular parameter as `re,im`.
    #[arg(long, default_value = "0.3,1.1", allow_hyphen_values = true)]
    tau: String,
    /// Minimum modulus of denominator factors in approximate regimes.
    #[arg(long)]
    pole_threshold: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
    /// List identities with their admissible regimes and exit.
    #[arg(long)]
    list: bool,
}

fn parse_tau(s: &str) -> Result<Complex> {
    let bad = || Error::Config(format!("--tau expects re,im, got {s:?}"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn run(cli: Cli) -> Result<i32> {
    let registry = IdentityRegistry::default();
    if cli.list {
        for d in registry.entries() {
            let regimes: Vec<&str> = d.regimes().iter().map(|r| r.name()).collect();
            println!("{:<28} {}", d.name, regimes.join(","));
        }
        return Ok(0);
    }
    let regime = match cli.regime {
        RegimeArg::Rational => Regime::Rational,
        RegimeArg::Trig => Regime::Trig,
        RegimeArg::Elliptic => Regime::Elliptic,
    };
    let mut cfg = SamplerConfig::new(cli.seed, regime);
    cfg.elliptic_tau = parse_tau(&cli.tau)?;
    if let Some(t) = cli.pole_threshold {
        cfg.pole_threshold = t;
    }
    let tol = Tolerance::new(cli.tolerance, 0.0).map_err(|e| Error::Config(e.to_string()))?;
    let overrides = Params {
        n: cli.n,
        k: cli.k,
        l: cli.l,
        p: cli.p,
        q: cli.q,
        r: cli.r,
        s: cli.s,
        m: cli.m,
        mprime: cli.mprime,
    };
    let selection: Vec<&str> = if cli.identity == "all" {
        all_for_regime(&registry, regime)
    } else {
        vec![cli.identity.as_str()]
    };
    let opts = SuiteOptions { trials: cli.trials, tol, overrides, parallel: !cli.serial };
    let reports = run_suite(&registry, &cfg, &selection, &opts)?;
    let echo = ConfigEcho::new(&cli.identity, &cfg, cli.trials, tol, overrides);
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let rendered = emit_report(&echo, &reports, format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(exit_code(&reports))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
