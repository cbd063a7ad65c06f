use clap::{Parser, Subcommand, ValueEnum};
use logroll::input::parse_profile;
use logroll::{commands, CliError, Command, CommitteeDocument, Options, SolveMode};
use logroll_core::{parse_rational, Rational};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Analyze vote-trading promises in a committee.
///
/// The committee is a JSON document such as
/// {"intensities": [-4, 1, "5/2"], "kappa": 2, "labels": ["a", "b", "c"]},
/// read from --input or standard input. Members are numbered from 1 in the
/// order given.
#[derive(Parser, Debug)]
#[command(name = "logroll", version)]
struct Cli {
    /// Committee document; standard input when omitted or "-".
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    /// Seed for sampled profiles.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest committee checked by coalition enumeration.
    #[arg(long, global = true, env = "LOGROLL_BRUTE_FORCE_CAP", default_value_t = logroll_core::stability::DEFAULT_BRUTE_FORCE_CAP)]
    brute_force_cap: usize,

    /// Largest committee handed to the linear program.
    #[arg(long, global = true, env = "LOGROLL_LP_CAP", default_value_t = logroll_core::lp::DEFAULT_LP_CAP)]
    lp_cap: usize,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Canonical,
    Selection,
    Both,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Regime, aggregates and least total transfer.
    Classify,
    /// Least-cost stable profiles.
    Solve {
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Stability and equilibrium verdict for a profile.
    Check {
        /// Reform-contingent promises: a file, a JSON array, or "3,0,-3".
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        /// Status-quo-contingent promises, same forms.
        #[arg(long, allow_hyphen_values = true)]
        status_quo: Option<String>,
    },
    /// A blocking coalition and its deviation, if one exists.
    Block {
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        #[arg(long, allow_hyphen_values = true)]
        status_quo: Option<String>,
    },
    /// Cross-check the least total transfer against the linear program.
    Verify {
        /// Number of sampled profiles to draw and re-check.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Least total transfer of the committee scaled by each factor.
    Sweep {
        /// Comma-separated positive factors, e.g. "1/2,1,3".
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
    },
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn lambdas(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| CliError::Parse(format!("lambdas: {e}"))))
        .collect()
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let doc = CommitteeDocument::parse(&read_input(cli.input.as_ref())?)?;
    let status_quo = |s: &Option<String>| s.as_deref().map(parse_profile).transpose();
    let command = match &cli.command {
        Sub::Classify => Command::Classify,
        Sub::Solve { mode } => Command::Solve {
            mode: match mode {
                Mode::Canonical => SolveMode::Canonical,
                Mode::Selection => SolveMode::Selection,
                Mode::Both => SolveMode::Both,
            },
        },
        Sub::Check { profile, status_quo: s } => Command::Check {
            profile: parse_profile(profile)?,
            status_quo: status_quo(s)?,
        },
        Sub::Block { profile, status_quo: s } => Command::Block {
            profile: parse_profile(profile)?,
            status_quo: status_quo(s)?,
        },
        Sub::Verify { samples } => Command::Verify { samples: *samples },
        Sub::Sweep { lambdas: l } => Command::Sweep { lambdas: lambdas(l)? },
    };
    let options = Options {
        seed: cli.seed,
        brute_force_cap: cli.brute_force_cap,
        lp_cap: cli.lp_cap,
    };
    let report = commands::run(&doc, &command, &options)?;
    match cli.output {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
