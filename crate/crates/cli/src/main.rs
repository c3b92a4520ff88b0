//! `cfl` — chroma-from-luma coding experiments: RD sweeps with BD-rate
//! reports, DC predictor error analysis, and per-block decision traces.

mod commands;
mod config;
mod corpus;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "cfl",
    version,
    about = "Chroma-from-luma prediction evaluation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run quantizer sweeps (cfl on/off) and report BD-rates.
    Eval {
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Distribution of squared DC prediction error per block size.
    AnalyzeDc {
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Per-block chroma mode decision traces.
    DumpBlocks {
        #[command(flatten)]
        args: CommonArgs,
        /// Add explicit/implicit least-squares alphas per block.
        #[arg(long)]
        fit_compare: bool,
    },
}

type CommandFn = Box<dyn FnOnce(&RunConfig, &[corpus::SourceImage]) -> anyhow::Result<()>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&CommonArgs, CommandFn) = match &cli.command {
        Command::Eval { args } => (args, Box::new(commands::cmd_eval)),
        Command::AnalyzeDc { args } => (args, Box::new(commands::cmd_analyze_dc)),
        Command::DumpBlocks { args, fit_compare } => {
            let fit = *fit_compare;
            (
                args,
                Box::new(move |cfg, corpus| commands::cmd_dump_blocks(cfg, corpus, fit)),
            )
        }
    };

    // Configuration and input problems are usage errors (exit 2);
    // anything after that is an internal error (exit 1).
    let cfg = match RunConfig::resolve(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let images = match corpus::load_corpus(&cfg.inputs, cfg.format) {
        Ok(images) => images,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg, &images) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
