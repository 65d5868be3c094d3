use std::ffi::OsString;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use levelcell::explain::{explain_conflict, ClauseDisplay, ExplainError};
use levelcell::levelwise::{single_cell, HeuristicConfig};
use levelcell::poly::FactorMode;
use levelcell::realalg::RealAlg;
use thiserror::Error;

use crate::compare::compare;
use crate::smtlib::{parse_problem, ParseError, Problem};
use crate::solve::{solve_conjunction, Verdict};
use crate::stats::RunStats;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "levelcell", version, about = "Single cylindrical cells around sample points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Engine {
    /// `<section>-<sector>` heuristic pair, or one name for both.
    #[arg(long, default_value = "eq-bc", value_parser = parse_config)]
    heuristic: HeuristicConfig,
    #[arg(long, default_value = "finest")]
    factor_mode: FactorMode,
    /// Drop the connectedness requirement on the top level.
    #[arg(long)]
    relax_top_connectedness: bool,
}

impl Engine {
    fn config(&self) -> HeuristicConfig {
        HeuristicConfig {
            relax_top_connectedness: self.relax_top_connectedness,
            factor_mode: self.factor_mode,
            ..self.heuristic
        }
    }
}

#[derive(Args, Debug)]
struct Input {
    /// Problem file in the supported SMT-LIB subset.
    file: PathBuf,
    /// Comma-separated coordinates, overriding the file's sample.
    #[arg(long, allow_hyphen_values = true)]
    sample: Option<String>,
    #[command(flatten)]
    engine: Engine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a cell around the sample on which every constraint polynomial is sign-invariant.
    Cell {
        #[command(flatten)]
        input: Input,
        /// Write the derivation trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        stats: bool,
    },
    /// Explain why the sample of all but the last variable has no extension.
    Explain {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stats: bool,
    },
    /// Decide the conjunction of the constraints.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Maximum number of explanations.
        #[arg(long, default_value = "256")]
        budget: NonZeroUsize,
        #[arg(long)]
        stats: bool,
    },
    /// Report per-heuristic statistics of solving every file.
    Compare {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Configurations to compare; all combinations when omitted.
        #[arg(long = "heuristic", value_parser = parse_config)]
        heuristics: Vec<HeuristicConfig>,
        #[arg(long, default_value = "256")]
        budget: NonZeroUsize,
    },
}

fn parse_config(s: &str) -> Result<HeuristicConfig, String> {
    HeuristicConfig::from_id(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
enum InputError {
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("bad sample: {0}")]
    Sample(String),
    #[error("{0}")]
    Usage(String),
}

fn load(path: &Path) -> Result<Problem, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read { path: path.into(), source })?;
    parse_problem(&text).map_err(|source| InputError::Parse { path: path.into(), source })
}

fn parse_sample(src: &str) -> Result<Vec<RealAlg>, InputError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(|v| RealAlg::parse(v).map_err(InputError::Sample)).collect()
}

/// The sample from the flag or the file, which must have `len` coordinates.
fn sample(input: &Input, problem: &Problem, len: usize) -> Result<Vec<RealAlg>, InputError> {
    let s = match &input.sample {
        Some(src) => parse_sample(src)?,
        None => problem
            .sample
            .clone()
            .ok_or_else(|| InputError::Usage("a sample is required (--sample or :sample in the file)".into()))?,
    };
    if s.len() != len {
        return Err(InputError::Usage(format!("the sample needs {len} coordinates, got {}", s.len())));
    }
    Ok(s)
}

/// Run the command line `argv` (program name first), returning the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(RunError::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(RunError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

#[derive(Debug, Error)]
enum RunError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, RunError> {
    match command {
        Command::Cell { input, trace, stats } => {
            let problem = load(&input.file)?;
            let s = sample(&input, &problem, problem.variables.len())?;
            let c = match single_cell(&problem.polynomials(), &s, &input.engine.config()) {
                Ok(c) => c,
                Err(e) => {
                    writeln!(out, "fail: {e}")?;
                    return Ok(EXIT_FAIL);
                }
            };
            write!(out, "{}", c.cell.display_with(&problem.variables))?;
            if let Some(path) = trace {
                std::fs::write(&path, c.trace.to_string())?;
            }
            if stats {
                let mut st = RunStats::default();
                st.record(&c);
                write!(out, "{st}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Explain { input, stats } => {
            let problem = load(&input.file)?;
            let n = problem.variables.len();
            if n == 0 {
                return Err(InputError::Usage("explain needs at least one variable".into()).into());
            }
            let s = sample(&input, &problem, n - 1)?;
            let e = match explain_conflict(&problem.constraints, &s, &input.engine.config()) {
                Ok(e) => e,
                Err(ExplainError::NotAConflict) => {
                    writeln!(out, "no conflict: the assignment extends to a solution")?;
                    return Ok(EXIT_FAIL);
                }
                Err(e) => {
                    writeln!(out, "fail: {e}")?;
                    return Ok(EXIT_FAIL);
                }
            };
            write!(out, "{}", e.cell.display_with(&problem.variables))?;
            writeln!(out, "clause {}", e.clause_display(&problem.variables))?;
            if stats {
                let mut st = RunStats::default();
                st.record(&e.construction);
                write!(out, "{st}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Solve { input, budget, stats } => {
            let problem = load(&input.file)?;
            if input.sample.is_some() {
                return Err(InputError::Usage("solve does not take a sample".into()).into());
            }
            let o = solve_conjunction(&problem, budget.get(), &input.engine.config());
            writeln!(out, "{}", o.verdict)?;
            let code = match &o.verdict {
                Verdict::Sat(model) => {
                    for (name, v) in problem.variables.iter().zip(model) {
                        writeln!(out, "{name} = {v}")?;
                    }
                    EXIT_OK
                }
                Verdict::Unsat => {
                    for l in &o.lemmas {
                        writeln!(out, "learned {}", ClauseDisplay::new(&l.cell, &problem.variables))?;
                    }
                    EXIT_OK
                }
                Verdict::Unknown(reason) => {
                    writeln!(out, "reason: {reason}")?;
                    EXIT_FAIL
                }
            };
            if stats {
                write!(out, "{}", o.stats)?;
            }
            Ok(code)
        }
        Command::Compare { files, heuristics, budget } => {
            let problems = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            let configs = if heuristics.is_empty() { HeuristicConfig::all_combinations() } else { heuristics };
            for summary in compare(&problems, &configs, budget.get()) {
                writeln!(out, "{summary}")?;
            }
            Ok(EXIT_OK)
        }
    }
}
