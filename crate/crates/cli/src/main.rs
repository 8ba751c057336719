//! `gamov-kit`: runs resonance experiments described by JSON configs.

mod commands;
mod config;
mod failure;
mod reproduce;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::{Command, ExperimentConfig, Target};
use crate::failure::Failure;

/// Environment variable overriding the output directory of the config.
const OUT_ENV: &str = "GAMOV_KIT_OUT";

#[derive(Parser)]
#[command(name = "gamov-kit", version, about = "Poles, survival, evolution and Gamov expansions of scattering matrices")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(clap::Args)]
struct Args {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the environment and the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReproduceArgs {
    /// Experiment config naming a `target`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Reference run; overrides the config.
    #[arg(long, value_enum)]
    name: Option<Target>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Locate poles of S in a region of the lower half plane.
    Poles(Args),
    /// Survival test at given points or at all located poles.
    Survival(Args),
    /// Evolve f and record norms and overlaps.
    Evolve(Args),
    /// Gamov expansion of Q₊S₋g.
    Expand(Args),
    /// Residual and background parts of ⟨f, Sg⟩.
    Transition(Args),
    /// Run every self-check on a model.
    Diagnose(Args),
    /// Reference runs with expected values.
    Reproduce(ReproduceArgs),
}

fn output_dir(flag: Option<&Path>, cfg: Option<&ExperimentConfig>) -> Result<PathBuf, Failure> {
    let dir = flag
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .or_else(|| cfg.and_then(|c| c.output_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| Failure::Config(format!("cannot create output directory {}: {e}", dir.display())))?;
    Ok(dir)
}

fn run_command(cmd: Command, args: &Args) -> Result<Outcome, Failure> {
    let cfg = ExperimentConfig::load(&args.config)?;
    cfg.expect_command(cmd)?;
    let dir = output_dir(args.out.as_deref(), Some(&cfg))?;
    let outcome = match cmd {
        Command::Poles => commands::poles(&cfg, &dir),
        Command::Survival => commands::survival(&cfg, &dir),
        Command::Evolve => commands::evolve(&cfg, &dir),
        Command::Expand => commands::expand_cmd(&cfg, &dir),
        Command::Transition => commands::transition(&cfg, &dir),
        Command::Diagnose => commands::diagnose(&cfg, &dir),
        Command::Reproduce => unreachable!("handled separately"),
    }?;
    Ok(outcome)
}

fn run_reproduce(args: &ReproduceArgs) -> Result<Outcome, Failure> {
    let cfg = args.config.as_deref().map(ExperimentConfig::load).transpose()?;
    if let Some(c) = &cfg {
        c.expect_command(Command::Reproduce)?;
    }
    let target = args
        .name
        .or_else(|| cfg.as_ref().and_then(|c| c.target))
        .ok_or_else(|| Failure::Config("reproduce needs --name or a config with `target`".into()))?;
    let dir = output_dir(args.out.as_deref(), cfg.as_ref())?;
    reproduce::run(target, &dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Sub::Poles(a) => run_command(Command::Poles, a),
        Sub::Survival(a) => run_command(Command::Survival, a),
        Sub::Evolve(a) => run_command(Command::Evolve, a),
        Sub::Expand(a) => run_command(Command::Expand, a),
        Sub::Transition(a) => run_command(Command::Transition, a),
        Sub::Diagnose(a) => run_command(Command::Diagnose, a),
        Sub::Reproduce(a) => run_reproduce(a),
    };
    let result = result.and_then(|out| {
        for f in &out.files {
            println!("wrote {}", f.display());
        }
        for s in &out.summary {
            println!("{s}");
        }
        out.into_result()
    });
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
