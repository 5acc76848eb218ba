//! Command-line front end. Every run is a pure function of its arguments;
//! the resolved configuration is echoed at the top of the output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::address::{internal_address, DEFAULT_MAX_TERMS};
use crate::angle::{kneading_of_angle, Angle};
use crate::corpus::certified_pairs;
use crate::entropy::{census, entropy_estimate, entropy_exact};
use crate::error::{Error, Result};
use crate::holder::{feigenbaum_counterexample, fit_exponent, holder_scan, monotonicity_sweep};
use crate::par::Execution;
use crate::renorm::{detect_renormalizable, entropy_identity_check};
use crate::sequence::KneadingSequence;

#[derive(Debug, Parser, Serialize)]
#[command(name = "kneading", version, about = "Kneading sequences, internal addresses and core entropy")]
pub struct Cli {
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    #[serde(skip)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Kneading sequence `PRE(PER)` over 0, 1, *.
    #[arg(long = "seq")]
    pub seq: Option<String>,
    /// External angle `p/q`.
    #[arg(long)]
    pub angle: Option<String>,
}

impl Input {
    fn sequence(&self) -> Result<KneadingSequence> {
        match (&self.seq, &self.angle) {
            (Some(s), _) => s.parse(),
            (None, Some(a)) => kneading_of_angle(&a.parse()?),
            (None, None) => Err(Error::InvalidSequence("no input given".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Kneading sequence of an external angle.
    Kneading {
        #[arg(long)]
        angle: String,
    },
    /// Internal address.
    Address {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Core entropy (exact, or a census growth estimate).
    Entropy {
        #[command(flatten)]
        input: Input,
        /// Use the census growth estimate instead of the exact value.
        #[arg(long)]
        estimate: bool,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
    },
    /// Precritical-point counts by depth.
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Renormalization certificates and entropy-identity reports.
    Renorm {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Hölder scan around an angle.
    Scan {
        #[arg(long)]
        angle: String,
        #[arg(long, default_value_t = 4)]
        m_min: u32,
        #[arg(long, default_value_t = 18)]
        m_max: u32,
        #[arg(long, value_delimiter = ',', default_value = "1,3")]
        offsets: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Entropy table for the non-Hölder family near the Feigenbaum point.
    Feigenbaum {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Census and entropy domination on a seeded corpus of certified pairs.
    Monotonicity {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_period: usize,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
    },
}

/// The emitted artifact and the process exit status.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

fn header_json(cli: &Cli) -> serde_json::Value {
    serde_json::to_value(cli).expect("config serializes")
}

fn csv_header(cli: &Cli) -> String {
    format!("# {}\n", serde_json::to_string(&header_json(cli)).expect("config serializes"))
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let ok = |text| Ok(Outcome { text, status: 0 });
    match &cli.command {
        Command::Kneading { angle } => {
            let a: Angle = angle.parse()?;
            ok(format!("{}\n", kneading_of_angle(&a)?))
        }
        Command::Address { input, max_terms } => {
            ok(format!("{}\n", internal_address(&input.sequence()?, *max_terms)?))
        }
        Command::Entropy { input, estimate, horizon } => {
            let nu = input.sequence()?;
            let result = if *estimate {
                entropy_estimate(&nu, *horizon)?
            } else {
                entropy_exact(&nu)?
            };
            ok(pretty(json!({
                "config": header_json(cli),
                "sequence": nu,
                "result": result,
            })))
        }
        Command::Census { input, horizon, format } => {
            let nu = input.sequence()?;
            let c = census(&nu, *horizon)?;
            match format {
                Format::Csv => {
                    let mut buf = csv_header(cli).into_bytes();
                    c.write_csv(&mut buf)?;
                    ok(String::from_utf8(buf).expect("utf8"))
                }
                Format::Json => {
                    let counts: Vec<String> = c.counts().iter().map(|n| n.to_string()).collect();
                    ok(pretty(json!({
                        "config": header_json(cli),
                        "sequence": nu,
                        "counts": counts,
                    })))
                }
            }
        }
        Command::Renorm { input, p_max } => {
            let nu = input.sequence()?;
            let certs = detect_renormalizable(&nu, *p_max)?;
            let mut status = 0;
            let mut reports = Vec::new();
            for c in &certs {
                match entropy_identity_check(&nu, c) {
                    Ok(r) => reports.push(serde_json::to_value(r).expect("json")),
                    Err(e) => {
                        status = 1;
                        reports.push(json!({ "error": e.to_string() }));
                    }
                }
            }
            Ok(Outcome {
                text: pretty(json!({
                    "config": header_json(cli),
                    "sequence": nu,
                    "certificates": certs,
                    "identity": reports,
                })),
                status,
            })
        }
        Command::Scan { angle, m_min, m_max, offsets, format } => {
            let theta: Angle = angle.parse()?;
            let scan = holder_scan(&theta, *m_min, *m_max, offsets, exec(cli))?;
            let fit = fit_exponent(&scan);
            match format {
                Format::Csv => {
                    let mut buf = csv_header(cli).into_bytes();
                    scan.write_csv(&mut buf)?;
                    ok(String::from_utf8(buf).expect("utf8"))
                }
                Format::Json => {
                    let fit = match fit {
                        Ok(f) => serde_json::to_value(f).expect("json"),
                        Err(e) => json!({ "error": e.to_string() }),
                    };
                    ok(pretty(json!({
                        "config": header_json(cli),
                        "theta": scan.theta,
                        "h_theta": scan.h_theta,
                        "skipped_infinite": scan.skipped_infinite,
                        "fit": fit,
                    })))
                }
            }
        }
        Command::Feigenbaum { n_max } => {
            let rows = feigenbaum_counterexample(*n_max)?;
            let status = if rows.iter().all(|r| r.pass) { 0 } else { 1 };
            Ok(Outcome {
                text: pretty(json!({ "config": header_json(cli), "rows": rows })),
                status,
            })
        }
        Command::Monotonicity { seed, count, max_period, horizon } => {
            let pairs = certified_pairs(*seed, *count, *max_period);
            let report = monotonicity_sweep(&pairs, *horizon, exec(cli))?;
            let status = if report.passed() { 0 } else { 1 };
            Ok(Outcome {
                text: pretty(json!({ "config": header_json(cli), "report": report })),
                status,
            })
        }
    }
}

/// Parses arguments, runs, writes output; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, out.text.as_bytes()),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 1;
            }
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
