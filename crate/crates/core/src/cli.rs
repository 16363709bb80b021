//! The `wavinv` command line.
//!
//! Exit codes: `0` when the object was produced or the check passed, `1` when
//! a check ran and failed (the payload still describes the failure), `2` for
//! usage, parse and domain errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{gamma_n, psi_n, random_sn_wavelet, shannon, w_n, Family};
use crate::error::Error;
use crate::interval::StepFunction;
use crate::oracle;
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "wavinv",
    version,
    about = "Exact MSF-type wavelet construction, verification and classification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the payload to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the frequency-side step function of a named family.
    Construct(ConstructArgs),
    /// Check the orthonormal-wavelet conditions exactly.
    Verify(InputArgs),
    /// Report the translation-invariance class of a verified wavelet.
    Classify(InputArgs),
    /// Translate/dilate hit table of each constant piece.
    Table(InputArgs),
    /// Check the support-in-S_n characterization for a given n.
    Sncheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        n: u32,
    },
    /// Numeric Gram matrix of the dilate/translate system.
    Gram {
        #[command(flatten)]
        input: InputArgs,
        /// Inclusive scale range, e.g. -2:2.
        #[arg(long, allow_hyphen_values = true, default_value = "-2:2", value_parser = parse_i32_range)]
        j: (i32, i32),
        /// Inclusive translation range, e.g. -4:4.
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4", value_parser = parse_i64_range)]
        k: (i64, i64),
    },
    /// Sample the wavelet as CSV.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Domain::Time)]
        domain: Domain,
        /// Sample range; in units of π for the frequency domain.
        #[arg(long, allow_hyphen_values = true, default_value = "-10:10", value_parser = parse_f64_range)]
        range: (f64, f64),
        #[arg(long, default_value_t = 201)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    /// `x,re,im` samples of ψ(x).
    Time,
    /// Exact ψ̂ values on a grid, `xi_over_pi,value_a,value_b,value_float`.
    Freq,
    /// Corner points of the ψ̂ plateaus, same columns as `freq`.
    Graph,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// gamma, psi, w, shannon or random.
    pub family: String,
    /// Template index; required for every family but shannon.
    pub n: Option<u32>,
    /// Number of profile cells for the random family.
    #[arg(long, default_value_t = 8)]
    pub cells: usize,
    /// Seed for the random family (required there).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 64)]
    pub max_n: u32,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// StepFunction JSON file, or - for standard input.
    #[arg(default_value = "-")]
    pub input: String,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    Ok((lo, hi))
}

fn parse_i32_range(s: &str) -> Result<(i32, i32), String> {
    parse_pair(s)
}

fn parse_i64_range(s: &str) -> Result<(i64, i64), String> {
    parse_pair(s)
}

fn parse_f64_range(s: &str) -> Result<(f64, f64), String> {
    parse_pair(s)
}

/// What a command produced and how the process should exit.
#[derive(Debug)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub payload: String,
    pub diagnostics: Vec<String>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    // going through Value sorts object keys
    let v = serde_json::to_value(value).expect("payload serializes");
    let mut s = if pretty {
        serde_json::to_string_pretty(&v)
    } else {
        serde_json::to_string(&v)
    }
    .expect("value serializes");
    s.push('\n');
    s
}

pub fn load_step_function(input: &str) -> Result<StepFunction, UsageError> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| UsageError(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| UsageError(format!("reading {input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| UsageError(format!("malformed step function: {e}")))
}

pub fn construct(args: &ConstructArgs) -> Result<StepFunction, UsageError> {
    let family: Family = args.family.parse()?;
    if family == Family::Shannon {
        return Ok(shannon());
    }
    let n = args
        .n
        .ok_or_else(|| UsageError(format!("family {family} needs n")))?;
    if n > args.max_n {
        return Err(UsageError(format!(
            "n = {n} exceeds --max-n {}",
            args.max_n
        )));
    }
    Ok(match family {
        Family::Gamma => gamma_n(n)?,
        Family::Psi => psi_n(n)?,
        Family::W => w_n(n)?,
        Family::Random => {
            let seed = args
                .seed
                .ok_or_else(|| UsageError("the random family needs --seed".into()))?;
            random_sn_wavelet(n, args.cells, seed)?
        }
        Family::Shannon => unreachable!(),
    })
}

pub fn execute(cli: &Cli) -> Result<CommandOutcome, UsageError> {
    let pretty = cli.pretty;
    let ok = |payload: String| CommandOutcome {
        exit_code: 0,
        payload,
        diagnostics: Vec::new(),
    };
    Ok(match &cli.command {
        Command::Construct(args) => ok(to_json(&construct(args)?, pretty)),
        Command::Verify(input) => {
            let f = load_step_function(&input.input)?;
            let report = verify::verify_wavelet(&f)?;
            let mut out = ok(to_json(&report, pretty));
            if !report.overall {
                out.exit_code = 1;
                out.diagnostics.push("not an orthonormal wavelet".into());
            }
            out
        }
        Command::Classify(input) => {
            let f = load_step_function(&input.input)?;
            let report = verify::verify_wavelet(&f)?;
            if report.overall {
                ok(to_json(
                    &verify::class_of(&verify::overlap_sets(&f)),
                    pretty,
                ))
            } else {
                CommandOutcome {
                    exit_code: 1,
                    payload: to_json(&report, pretty),
                    diagnostics: vec![Error::NotVerified.to_string()],
                }
            }
        }
        Command::Table(input) => {
            let f = load_step_function(&input.input)?;
            ok(to_json(&verify::hit_table(&f)?, pretty))
        }
        Command::Sncheck { input, n } => {
            let f = load_step_function(&input.input)?;
            let report = verify::check_sn_characterization(&f, *n)?;
            let mut out = ok(to_json(&report, pretty));
            if !report.all_hold {
                out.exit_code = 1;
                out.diagnostics
                    .push(format!("S_{n} characterization fails"));
            }
            out
        }
        Command::Gram { input, j, k } => {
            let f = load_step_function(&input.input)?;
            ok(to_json(&oracle::gram_matrix(&f, *j, *k)?, pretty))
        }
        Command::Sample {
            input,
            domain,
            range,
            count,
        } => {
            let f = load_step_function(&input.input)?;
            let mut buf = Vec::new();
            match domain {
                Domain::Time => {
                    let samples = oracle::sample_series(&f, range.0, range.1, *count)?;
                    oracle::write_time_csv(&mut buf, &samples)
                }
                Domain::Freq => {
                    let samples = oracle::sample_frequency(&f, range.0, range.1, *count)?;
                    oracle::write_frequency_csv(&mut buf, &samples)
                }
                Domain::Graph => {
                    oracle::write_frequency_csv(&mut buf, &oracle::frequency_graph(&f))
                }
            }
            .expect("writing to memory");
            ok(String::from_utf8(buf).expect("csv is utf-8"))
        }
    })
}

/// Runs the parsed command, writes payload and diagnostics, and returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &outcome.payload),
                None => io::stdout().write_all(outcome.payload.as_bytes()),
            };
            match written {
                // reader went away, e.g. `| head`
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    return 2;
                }
                Ok(()) => {}
            }
            for d in &outcome.diagnostics {
                eprintln!("{d}");
            }
            outcome.exit_code
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
