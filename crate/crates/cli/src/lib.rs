//! Reproducible spreader-ranking experiments behind the `bcr` binary.

pub mod config;
pub mod experiments;
pub mod output;
pub mod reproduce;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{ExperimentConfig, Overrides};
use output::write_table;

#[derive(Debug, Parser)]
#[command(
    name = "bcr",
    version,
    about = "Rank influential spreaders by basic cycle ratio"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Score and rank every node; one CSV per method
    Rank,
    /// SIR spreading of top-ranked seeds over fractions and beta multiples
    Sir,
    /// Kendall tau, individuation, cost and dispersion tables
    Eval,
    /// Regenerate all tables and figure data for the manifest datasets
    Reproduce,
}

pub fn run(cli: &Cli) -> Result<()> {
    if let Some(threads) = cli.overrides.threads {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cfg = ExperimentConfig::resolve(&cli.overrides)?;
    match cli.command {
        Command::Rank | Command::Sir | Command::Eval => {
            let graph = experiments::load_graph(cfg.graph_path()?)?;
            let tables = match cli.command {
                Command::Rank => experiments::rank_tables(&graph, &cfg),
                Command::Sir => experiments::sir_tables(&graph, &cfg)?,
                _ => experiments::eval_tables(&graph, &cfg)?,
            };
            for table in &tables {
                let path = write_table(&cfg.out, table, &cfg)?;
                log::info!("wrote {}", path.display());
            }
        }
        Command::Reproduce => {
            let checks = reproduce::run(&cfg)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            log::info!(
                "{} checks, {} passed, {} failed; see {}",
                checks.len(),
                checks.len() - failed,
                failed,
                cfg.out.join("summary.csv").display()
            );
        }
    }
    Ok(())
}
