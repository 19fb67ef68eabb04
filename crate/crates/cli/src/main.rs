use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pentagon_cli::commands;
use pentagon_cli::report::{Report, SuiteReport};
use pentagon_cli::suite::run_suite;
use pentagon_cli::verify::{verify_file, Kind};
use pentagon_core::io::{write_json, Loader};
use pentagon_core::{Error, Tolerances};

/// Verify finite quantum groups, bicharacters, homomorphisms and coactions.
#[derive(Parser)]
#[command(name = "pentagon", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Use this threshold for every residual instead of the defaults.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
    /// Print the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Print the report as human-readable text.
    #[arg(long, global = true)]
    text: bool,
    /// Write the produced object (compose, dual, induce) or the report (verify, suite) here.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for one file.
    Verify {
        path: PathBuf,
        /// Detected from the file's keys when omitted.
        #[arg(value_enum)]
        kind: Option<Kind>,
    },
    /// Compose the bicharacters `v1 : C → B` and `v2 : B → A`.
    Compose { v1: PathBuf, v2: PathBuf },
    /// Dualize a bicharacter.
    Dual { v: PathBuf },
    /// Induce a coaction along a homomorphism or bicharacter.
    Induce { coaction: PathBuf, hom: PathBuf },
    /// Verify every file in a corpus directory, plus the category laws among its bicharacters.
    Suite { dir: PathBuf },
}

enum Output {
    One(Report),
    Suite(SuiteReport),
}

impl Output {
    fn pass(&self) -> bool {
        match self {
            Output::One(r) => r.pass(),
            Output::Suite(s) => s.pass(),
        }
    }

    fn render(&self, text: bool) -> String {
        match (self, text) {
            (Output::One(r), false) => r.to_json() + "\n",
            (Output::One(r), true) => r.render_text(false),
            (Output::Suite(s), false) => s.to_json() + "\n",
            (Output::Suite(s), true) => s.render_text(),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let tol = cli.global.tol.map(Tolerances::uniform).unwrap_or_default();
    let loader = Loader::new(tol);
    let out = cli.global.out.as_deref();
    Ok(match &cli.command {
        Command::Verify { path, kind } => Output::One(verify_file(path, *kind, &loader)?),
        Command::Compose { v1, v2 } => {
            let (report, file) = commands::compose(v1, v2, out, &loader)?;
            save(out, &file)?;
            Output::One(report)
        }
        Command::Dual { v } => {
            let (report, file) = commands::dual(v, &loader)?;
            save(out, &file)?;
            Output::One(report)
        }
        Command::Induce { coaction, hom } => {
            let (report, file) = commands::induce(coaction, hom, out, &loader)?;
            save(out, &file)?;
            Output::One(report)
        }
        Command::Suite { dir } => {
            if !dir.is_dir() {
                return Err(Error::Format(format!("{}: not a directory", dir.display())));
            }
            let suite = run_suite(dir, &loader)?;
            if suite.reports.is_empty() {
                eprintln!("warning: no JSON files under {}", dir.display());
            }
            Output::Suite(suite)
        }
    })
}

fn save(out: Option<&Path>, file: &impl serde::Serialize) -> Result<(), Error> {
    match out {
        Some(p) => write_json(p, file),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let rendered = output.render(cli.global.text);
            let report_to_file = matches!(cli.command, Command::Verify { .. } | Command::Suite { .. });
            match (&cli.global.out, report_to_file) {
                (Some(path), true) => {
                    if let Err(e) = std::fs::write(path, &rendered) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                _ => print!("{rendered}"),
            }
            if output.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            ExitCode::from(if e.is_structural() { 2 } else { 1 })
        }
    }
}
