//! `cayley-ci`: checks the Cayley isomorphism claims and prints a JSON report.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cayley_ci_core::digraph::{SearchOptions, DEFAULT_NODE_BUDGET};
use clap::{Parser, Subcommand};

use commands::{run_all, CliError, CliResult, Ctx, Task, EXIT_IO, EXIT_USAGE};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "cayley-ci", version, about = "Checks Cayley isomorphism claims and prints a JSON report")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Odd prime modulus (3 to 13).
    #[arg(long, global = true)]
    q: Option<u32>,

    /// Residue x for the connection set T; only used when q > 7.
    #[arg(long, global = true, allow_negative_numbers = true)]
    x: Option<i64>,

    /// Directory for digraph, partition and certificate files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Node budget for every backtracking search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,

    /// Adds q = 13 to the `all` sweep.
    #[arg(long, global = true)]
    slow: bool,

    /// Worker threads for `all`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    /// Report runtime_ms as 0 so that repeated runs print identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Orbit families of the point stabilizer on H.
    Orbits,
    /// Whether {e} ∪ P_0 separates the orbitals of G.
    Separate,
    /// Order of the 2-closure of G acting on H.
    TwoClosed,
    /// Schur ring generated by T against the transitivity module, plus the product table.
    SchurGen,
    /// Non-CI certificate for H.
    NonCi,
    /// The bipartite example over Dih(Z_3^3).
    Z27,
    /// The identities satisfied by alpha and alpha-hat.
    Alpha,
    /// The subgraphs Phi_t for every t ≠ 0.
    Phi,
    /// Agreement of the two CI tests on small groups.
    Oracle,
    /// Every subcommand over the default sweep of q.
    All,
}

impl Cli {
    fn q(&self) -> CliResult<u32> {
        self.q.ok_or_else(|| CliError::Usage("this subcommand needs --q <prime>".into()))
    }

    fn task(&self) -> CliResult<Option<Task>> {
        let takes_x = matches!(self.command, Command::SchurGen | Command::NonCi);
        if self.x.is_some() && !takes_x {
            return Err(CliError::Usage("--x applies only to schur-gen and non-ci".into()));
        }
        if self.q.is_some() && matches!(self.command, Command::Z27 | Command::Oracle | Command::All) {
            return Err(CliError::Usage("--q does not apply to this subcommand".into()));
        }
        Ok(Some(match self.command {
            Command::Orbits => Task::Orbits(self.q()?),
            Command::Separate => Task::Separate(self.q()?),
            Command::TwoClosed => Task::TwoClosed(self.q()?),
            Command::SchurGen => Task::SchurGen(self.q()?, self.x),
            Command::NonCi => Task::NonCi(self.q()?, self.x),
            Command::Z27 => Task::Z27,
            Command::Alpha => Task::Alpha(self.q()?),
            Command::Phi => Task::Phi(self.q()?),
            Command::Oracle => Task::Oracle,
            Command::All => return Ok(None),
        }))
    }

    fn run(&self) -> CliResult<Report> {
        let ctx = Ctx {
            out: self.out.clone(),
            opts: SearchOptions { budget: self.budget },
        };
        let start = Instant::now();
        let mut report = match self.task()? {
            Some(task) => task.run(&ctx)?,
            None => run_all(&ctx, self.slow, usize::from(self.jobs))?,
        };
        report.runtime_ms = if self.no_timing {
            0
        } else {
            start.elapsed().as_millis() as u64
        };
        Ok(report)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.run() {
        Ok(report) => {
            let mut text = match serde_json::to_string_pretty(&report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cayley-ci: {e}");
                    return ExitCode::from(CliError::from(e).exit_code());
                }
            };
            text.push('\n');
            if std::io::stdout().lock().write_all(text.as_bytes()).is_err() {
                return ExitCode::from(EXIT_IO);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("cayley-ci: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
