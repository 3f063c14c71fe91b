//! `minexp-lab`: batch verifications for monomial models.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use minexp_lab::harness::{run, AlphaSpec, RunConfig, COMMANDS};
use minexp_lab::vfilt::GrMode;
use minexp_lab::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exact checks of V-filtration, Hodge and minimal-exponent statements on
/// monomial models. Exit codes: 0 all checks pass, 1 input error, 2 a check failed.
#[derive(Debug, Parser)]
#[command(name = "minexp-lab", version)]
struct Cli {
    /// One of the commands listed below, or `run` followed by a JSON config file.
    #[arg(value_parser = command_name)]
    command: String,
    /// Config file for `run`.
    config: Option<PathBuf>,
    /// Model as JSON, e.g. '{"n":2,"exponents":[1,1]}'. Omit to sweep the catalog.
    #[arg(long)]
    model: Option<String>,
    /// Pairs (a_i, k_i) for `lct` as JSON, e.g. '[[1,0],[2,1]]'.
    #[arg(long)]
    pairs: Option<String>,
    /// `all-jumps` or a comma-separated list of rationals.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    pmax: Option<u32>,
    /// Box radius.
    #[arg(long = "box")]
    radius: Option<i64>,
    /// `V` or `GrV` for the `vfilt` command.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; MINEXP_LAB_JOBS takes precedence.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn command_name(s: &str) -> std::result::Result<String, String> {
    if s == "run" || COMMANDS.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected `run` or one of: {}", COMMANDS.join(", ")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = if cli.command == "run" {
        let Some(path) = &cli.config else {
            return Err(Error::InvalidInput("`run` needs a config file".into()));
        };
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        RunConfig::from_json(&text)?
    } else {
        if cli.config.is_some() {
            return Err(Error::InvalidInput("a config file is only accepted by `run`".into()));
        }
        RunConfig::new(&cli.command)
    };
    if let Some(m) = &cli.model {
        cfg.model = Some(parse_json("--model", m)?);
    }
    if let Some(p) = &cli.pairs {
        cfg.pairs = Some(parse_json("--pairs", p)?);
    }
    if let Some(a) = &cli.alpha {
        cfg.alpha = AlphaSpec::parse(a)?;
    }
    if let Some(m) = &cli.mode {
        cfg.mode = Some(m.parse::<GrMode>()?);
    }
    cfg.pmax = cli.pmax.or(cfg.pmax);
    cfg.radius = cli.radius.or(cfg.radius);
    cfg.jobs = cli.jobs.or(cfg.jobs);
    cfg.out = cli.out.clone().or(cfg.out);
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = config(cli)?;
    let report = run(&cfg)?;
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("minexp-lab: {e}");
            ExitCode::from(1)
        }
    }
}
