//! Command-line front end for the `ratiocut` solvers.

pub mod args;
pub mod bench;
pub mod commands;
pub mod datasets;
pub mod input;
pub mod report;

use anyhow::Result;

use crate::args::{Cli, Command};

/// What a run produced; decides the exit status.
#[derive(Debug)]
pub enum Outcome {
    Report(Box<report::RunReport>),
    Bench(bench::BenchSummary),
}

impl Outcome {
    pub fn success(&self) -> bool {
        match self {
            Outcome::Report(r) => r.certified != Some(false),
            Outcome::Bench(s) => s.all_ok(),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Dsp(a) => Outcome::Report(Box::new(commands::cmd_dsp(a)?)),
        Command::ConductanceStar(a) => Outcome::Report(Box::new(commands::cmd_conductance_star(a)?)),
        Command::Envelope(a) => Outcome::Report(Box::new(commands::cmd_envelope(a)?)),
        Command::Greedy(a) => Outcome::Report(Box::new(commands::cmd_greedy(a)?)),
        Command::Greedypp(a) => Outcome::Report(Box::new(commands::cmd_greedypp(a)?)),
        Command::Bench(a) => {
            let manifest = bench::load_manifest(&a.manifest)?;
            let base = a
                .manifest
                .parent()
                .map(|p| p.to_path_buf())
                .unwrap_or_default();
            let out = a.output.clone().unwrap_or_else(|| base.join("bench-out"));
            Outcome::Bench(bench::run_manifest(&manifest, &base, &out, a.workers)?)
        }
    })
}
