//! `pexp`: decide positive expansivity of linear and additive cellular
//! automata described by a JSON job file.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, ValueEnum};
use pexp_core::job::{parse_job, run, Command, Format, PartialOptions};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Positive-expansivity verdict with per-prime explanations.
    Decide,
    /// Characteristic polynomial over Z/m and modulo each prime.
    Charpoly,
    /// Invariant factors of tI - A modulo each prime.
    Invariants,
    /// Window verifier and bounded witness search.
    Oracle,
    /// Embedding of an additive rule into a linear one.
    Embed,
    /// Decider, oracle and invariant factors side by side; exit 2 on disagreement.
    Crosscheck,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Decide => Command::Decide,
            Cmd::Charpoly => Command::Charpoly,
            Cmd::Invariants => Command::Invariants,
            Cmd::Oracle => Command::Oracle,
            Cmd::Embed => Command::Embed,
            Cmd::Crosscheck => Command::Crosscheck,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "pexp", version, about)]
struct Cli {
    command: Cmd,
    /// Job file; reads stdin when absent or `-`.
    job: Option<PathBuf>,
    /// Largest window bound tried by the verifier.
    #[arg(long, value_name = "N")]
    budget_lhat: Option<u32>,
    /// Support width of falsifier candidates.
    #[arg(long, value_name = "W")]
    budget_width: Option<u32>,
    /// Steps simulated per falsifier candidate.
    #[arg(long, value_name = "L")]
    budget_steps: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    /// Seed for sampled searches.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

fn read_job(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let text = match read_job(cli.job.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read job: {e}");
            return ExitCode::from(1);
        }
    };
    let job = match parse_job(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let flags = PartialOptions {
        lhat_max: cli.budget_lhat,
        width: cli.budget_width,
        steps: cli.budget_steps,
        seed: cli.seed,
        format: cli.format.map(|f| match f {
            Fmt::Text => Format::Text,
            Fmt::Structured => Format::Structured,
        }),
    };
    let report = job
        .options
        .overridden_by(flags)
        .resolve()
        .and_then(|opts| run(cli.command.into(), &job, &opts));
    match report {
        Ok(r) => {
            print!("{}", r.body);
            ExitCode::from(r.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
