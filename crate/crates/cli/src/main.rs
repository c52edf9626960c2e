//! `arrcheck`: exact analysis of plane line arrangements.

mod claims;
mod input;

use std::fmt::Write as _;
use std::process::ExitCode;

use arrcheck_core::census::{enumerate_mpog_candidates, CensusOptions, CensusReport, Status, MAX_DEGREE, MIN_DEGREE};
use arrcheck_core::linalg::LinalgError;
use arrcheck_core::report::{analyze, canonical_json, dims_table};
use arrcheck_core::syzygy::ClassifyOptions;
use arrcheck_core::SyzygyError;
use clap::{Args, Parser, Subcommand};

use crate::input::{InputArgs, InputError};

/// Exit statuses. Part of the command-line contract.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const INVALID_ARRANGEMENT: u8 = 2;
    pub const BOUND_EXCEEDED: u8 = 3;
    /// A strict census, a claim, or an internal consistency check failed.
    pub const CHECK_FAILED: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(
    name = "arrcheck",
    version,
    about = "Exact Jacobian syzygy analysis of line arrangements"
)]
struct Cli {
    /// Generator search bound (default 2d − 2).
    #[arg(long, global = true, env = "ARRCHECK_RMAX")]
    r_max: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one arrangement.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate numerical candidates for minimal plus-one generated arrangements.
    Census(CensusArgs),
    /// Re-derive every published claim and print a pass/fail table.
    VerifyPaper {
        /// Run only claims whose id equals this or starts with `<ID>:`.
        #[arg(long)]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Self-test: drop the last line of this builtin before checking.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Equal weak combinatorics but different mdr?
    Ziegler {
        /// Builtin name or arrangement file.
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Print only the minimal degree of a Jacobian relation.
    Mdr {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the `r ↦ dim AR_r` table.
    Profile {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Exit nonzero unless exactly the four known tuples survive.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    show_rejected: bool,
    #[arg(long, default_value_t = MAX_DEGREE as u64,
          value_parser = clap::value_parser!(u64).range(MIN_DEGREE as u64..=MAX_DEGREE as u64))]
    max_degree: u64,
    #[arg(long)]
    json: bool,
}

/// Error carrying the exit status it maps to.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(e) if e.is_invalid_arrangement() => exit::INVALID_ARRANGEMENT,
            CliError::Input(_) => exit::USAGE,
            CliError::Syzygy(e) => syzygy_code(e),
            CliError::CheckFailed(_) => exit::CHECK_FAILED,
        }
    }
}

fn syzygy_code(e: &SyzygyError) -> u8 {
    match e {
        SyzygyError::BoundTooSmall { .. } | SyzygyError::Linalg(LinalgError::GrowthCapExceeded { .. }) => {
            exit::BOUND_EXCEEDED
        }
        _ => exit::CHECK_FAILED,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::from(exit::OK)
        }
        Err((out, e)) => {
            print!("{out}");
            eprintln!("arrcheck: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Returns stdout text; on failure also whatever was produced before it.
fn run(cli: Cli) -> Result<String, (String, CliError)> {
    let options = ClassifyOptions {
        r_max: cli.r_max,
        ..ClassifyOptions::default()
    };
    let plain = |r: Result<String, CliError>| r.map_err(|e| (String::new(), e));
    match cli.command {
        Command::Analyze { input, json } => plain(cmd_analyze(&input, json, &options)),
        Command::Census(args) => cmd_census(&args),
        Command::VerifyPaper { only, json, corrupt } => claims::run(&only, json, corrupt.as_deref(), &options),
        Command::Ziegler { first, second, json } => plain(cmd_ziegler(&first, &second, json, &options)),
        Command::Mdr { input } => plain(cmd_mdr(&input, &options)),
        Command::Profile { input, json } => plain(cmd_profile(&input, json, &options)),
    }
}

fn cmd_analyze(input: &InputArgs, json: bool, options: &ClassifyOptions) -> Result<String, CliError> {
    let (name, arr) = input.load()?;
    let report = analyze(&name, &arr, options)?;
    Ok(if json {
        report.to_canonical_json()
    } else {
        report.to_text()
    })
}

fn cmd_mdr(input: &InputArgs, options: &ClassifyOptions) -> Result<String, CliError> {
    let (_, arr) = input.load()?;
    Ok(format!("{}\n", arr.mdr(options.limits)?))
}

fn cmd_profile(input: &InputArgs, json: bool, options: &ClassifyOptions) -> Result<String, CliError> {
    let (_, arr) = input.load()?;
    let profile = arr.classify(options)?;
    Ok(if json {
        canonical_json(&serde_json::json!({ "report_version": 1, "dims": profile.dims }))
    } else {
        dims_table(&profile.dims)
    })
}

fn cmd_ziegler(first: &str, second: &str, json: bool, options: &ClassifyOptions) -> Result<String, CliError> {
    let verdict = claims::ziegler(first, second, options)?;
    Ok(if json {
        canonical_json(&serde_json::to_value(&verdict).expect("verdict serializes"))
    } else {
        verdict.to_text()
    })
}

fn cmd_census(args: &CensusArgs) -> Result<String, (String, CliError)> {
    let report = enumerate_mpog_candidates(CensusOptions {
        max_degree: args.max_degree as usize,
        reverse_r: false,
    });
    let out = if args.json {
        canonical_json(&serde_json::to_value(&report).expect("census serializes"))
    } else {
        census_text(&report, args.show_rejected)
    };
    if args.strict && report.accepted_tuples() != claims::EXPECTED_TUPLES {
        let e = CliError::CheckFailed(format!(
            "accepted set {:?} differs from the expected {:?}",
            report.accepted_tuples(),
            claims::EXPECTED_TUPLES
        ));
        return Err((out, e));
    }
    Ok(out)
}

fn census_text(report: &CensusReport, show_rejected: bool) -> String {
    let mut out = String::from("bounds\n   d  mdr window  n3 lower  U3\n");
    for b in &report.bounds {
        let window = if b.window_is_empty() {
            "empty".to_string()
        } else {
            format!("{}..={}", b.r_low, b.r_high)
        };
        let _ = writeln!(
            out,
            "{:>4}  {:<10}  {:>8}  {:>2}",
            b.d,
            window,
            b.n3_low.to_string(),
            b.u3
        );
    }
    out.push_str("\ncandidates\n   d   r   n2   n3  status\n");
    for c in &report.candidates {
        let status = match &c.status {
            Status::Accepted => "accepted".to_string(),
            Status::Rejected { .. } if !show_rejected => continue,
            Status::Rejected { reasons } => {
                let rs: Vec<String> = reasons.iter().map(ToString::to_string).collect();
                format!("rejected: {}", rs.join("; "))
            }
        };
        let _ = writeln!(out, "{:>4}{:>4}{:>5}{:>5}  {status}", c.d, c.r, c.n2, c.n3);
    }
    if show_rejected && !report.degree_rejections.is_empty() {
        out.push_str("\nrejected degrees\n");
        for row in &report.degree_rejections {
            let rs: Vec<String> = row.reasons.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  d = {}: {}", row.d, rs.join("; "));
        }
    }
    out.push_str("\naccepted weak combinatorics\n");
    for a in &report.accepted {
        let mdrs: Vec<String> = a.mdr_values.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "  {a}  mdr {}  realized by {}",
            mdrs.join(", "),
            a.realization.as_deref().unwrap_or("-")
        );
    }
    out
}
