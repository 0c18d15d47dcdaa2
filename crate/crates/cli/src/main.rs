use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dqsim_cli::checks::run_checks;
use dqsim_cli::{census, census_summary, field_info, render, render_census, run, ExperimentDescriptor, OutputFormat};

/// Exact simulation of quantum algorithms over finite fields.
#[derive(Parser)]
#[command(name = "dqsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Element count and phase-group order of a field.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        degree: u64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Enumerate the unit vectors of F_{p^2}^2 and their phase classes.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the experiment described by a JSON file.
    Run {
        descriptor: PathBuf,
        /// Override the descriptor's oracle arity.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the named reproduction checks.
    VerifyPaper {
        /// Check id, group or name substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::FieldInfo { p, degree, format } => {
            let info = field_info(p, degree)?;
            emit(&info.render(format), None)?;
        }
        Command::Census { p, format, out } => {
            let c = census(p)?;
            emit(&render_census(&c, format), out.as_deref())?;
            if out.is_some() {
                println!("{}", census_summary(&c));
            } else {
                eprintln!("{}", census_summary(&c));
            }
        }
        Command::Run { descriptor, n, format, out } => {
            let text = fs::read_to_string(&descriptor)
                .with_context(|| format!("reading {}", descriptor.display()))?;
            let mut d = ExperimentDescriptor::parse(&text)?;
            if n.is_some() {
                d.n = n;
            }
            let result = run(&d)?;
            emit(&render(&result, format.unwrap_or(d.format)), out.as_deref())?;
        }
        Command::VerifyPaper { filter, format, out } => {
            let suite = run_checks(filter.as_deref());
            let json = serde_json::to_string_pretty(&suite)? + "\n";
            match format {
                Some(OutputFormat::Json) => print!("{json}"),
                _ => {
                    for c in &suite.checks {
                        println!("{}", c.line());
                    }
                    println!("{} passed, {} failed", suite.passed, suite.failed);
                }
            }
            if let Some(path) = out {
                emit(&json, Some(&path))?;
            }
            return Ok(ExitCode::from(suite.exit_code as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
