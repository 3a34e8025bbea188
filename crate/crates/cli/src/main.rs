//! `willmin` command-line driver. Exit codes: 0 success, 1 input error,
//! 2 no convergence.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod forest_cmd;
mod mesh_cmd;

use std::fs::OpenOptions;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};

pub enum Outcome {
    Done,
    NotConverged(String),
}

fn init_logging(cli: &Cli) -> Result<()> {
    let env = env_logger::Env::new().filter_or("WILLMIN_LOG", "warn");
    let mut builder = env_logger::Builder::from_env(env);
    if let Some(path) = &cli.log {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening log file {}", path.display()))?;
        builder.target(env_logger::Target::Pipe(Box::new(file)));
    }
    builder.try_init()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    init_logging(cli)?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Minimize(a) => mesh_cmd::minimize(a),
        Command::Eval(a) => mesh_cmd::eval(a),
        Command::Forest(f) => forest_cmd::run(f),
        Command::Fixture(a) => mesh_cmd::fixture(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NotConverged(msg)) => {
            eprintln!("willmin: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("willmin: error: {e:#}");
            ExitCode::from(1)
        }
    }
}
