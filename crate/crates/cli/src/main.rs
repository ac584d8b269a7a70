//! `jbstar`: property suites, plant-and-recover runs and Stone demos.
//!
//! Exit codes: 0 when every record passes (warnings allowed), 1 when a
//! record fails, 2 on configuration or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use jbstar::harness::{cmd_roundtrip, cmd_stone, cmd_verify, parse_config_text, write_report, Format, JobConfig};

#[derive(Parser)]
#[command(name = "jbstar", version, about = "Seeded checks for finite-dimensional JB*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run invariant suites.
    Verify(JobArgs),
    /// Plant structured isometries and reconstruct them.
    Roundtrip(JobArgs),
    /// Recover generators of one-parameter unitary groups.
    Stone(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Suite selector: `all` or comma-separated tags.
    #[arg(long)]
    suite: Option<String>,
    /// Model spec such as `matrix:3`, `spin:4`, `albert`, `matrix:2⊕matrix:2`
    /// (or `+`). Repeatable; replaces the models of `--config`.
    #[arg(long = "model")]
    models: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override `NAME=VALUE`. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tols: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_name = "json|text")]
    format: Option<String>,
    /// Plain-text `key = value` job file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl JobArgs {
    fn to_config(&self) -> Result<JobConfig> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_config_text(&text)?
            }
            None => JobConfig::new(),
        };
        if let Some(s) = &self.suite {
            c.set_suites(s)?;
        }
        if !self.models.is_empty() {
            c.models.clear();
            for m in &self.models {
                c.add_model(m)?;
            }
        }
        if let Some(t) = self.trials {
            c.set_trials(t)?;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        for t in &self.tols {
            c.set_tolerance(t)?;
        }
        if let Some(o) = &self.out {
            c.out = Some(o.clone());
        }
        if let Some(f) = &self.format {
            c.format = f.parse::<Format>()?;
        }
        Ok(c)
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let (args, cmd): (&JobArgs, fn(&JobConfig) -> jbstar::Result<_>) = match &cli.command {
        Cmd::Verify(a) => (a, cmd_verify),
        Cmd::Roundtrip(a) => (a, cmd_roundtrip),
        Cmd::Stone(a) => (a, cmd_stone),
    };
    let config = args.to_config()?;
    let report = cmd(&config)?;
    let text = write_report(&report, &config)?;
    if config.out.is_none() {
        print!("{text}");
    } else {
        eprint!("{}", report.to_text().lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
