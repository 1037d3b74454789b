//! Command line front end: group ingestion, dispatch and deterministic
//! JSON/CSV reports.

pub mod commands;
pub mod error;
pub mod output;
pub mod source;
pub mod verify;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use wordmaps_core::group::GroupOptions;
use wordmaps_core::omega::DEFAULT_CLOSURE_CAP;
use wordmaps_core::word::DEFAULT_TABLE_CAP;

use crate::commands::Output;
use crate::error::{CliError, EXIT_INVARIANT, EXIT_USAGE};
use crate::output::{to_csv, to_json};
use crate::source::load_group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Nilpotency class, lower central series and exp profile.
    Classify,
    /// Exact word map counts, bounds and growth profiles.
    Omega,
    /// Count admissible functions and check their word maps are distinct.
    Admissible,
    /// List the Hall basis of the free nilpotent group.
    HallBasis,
    /// Tabulate formal commutator counts against the closed form.
    CountCommutators,
    /// Collect a word into its Hall basis normal form.
    NormalForm,
    /// Run the seeded property suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Lower,
    Upper,
    Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Plain `index weight tree` lines; `hall-basis` only.
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandConfig {
    pub command: Command,
    pub group: Option<String>,
    pub d: Option<usize>,
    pub class: Option<usize>,
    pub d_max: Option<usize>,
    pub mode: Mode,
    pub table_cap: usize,
    pub closure_cap: u64,
    pub format: Format,
    pub seed: u64,
    pub word: Option<String>,
    pub workers: usize,
}

impl CommandConfig {
    pub fn new(command: Command) -> Self {
        CommandConfig {
            command,
            group: None,
            d: None,
            class: None,
            d_max: None,
            mode: Mode::Exact,
            table_cap: DEFAULT_TABLE_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            format: Format::Json,
            seed: 0,
            word: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "wordmaps", version, about = "Word maps on finite groups")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Builtin spec (e.g. builtin:symmetric:3) or path to a JSON group file.
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true)]
    d: Option<usize>,
    #[arg(long, global = true)]
    class: Option<usize>,
    #[arg(long = "d-max", global = true)]
    d_max: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long = "table-cap", global = true, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: usize,
    #[arg(long = "closure-cap", global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    closure_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    word: Option<String>,
    /// Threads for closure; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

impl From<Args> for CommandConfig {
    fn from(a: Args) -> Self {
        CommandConfig {
            command: a.command,
            group: a.group,
            d: a.d,
            class: a.class,
            d_max: a.d_max,
            mode: a.mode,
            table_cap: a.table_cap,
            closure_cap: a.closure_cap,
            format: a.format,
            seed: a.seed,
            word: a.word,
            workers: a.workers,
        }
    }
}

/// Exit status and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn validate(config: &CommandConfig) -> Result<(), CliError> {
    if config.table_cap == 0 || config.closure_cap == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    if config.workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    Ok(())
}

fn dispatch(config: &CommandConfig) -> Result<Output, CliError> {
    validate(config)?;
    let group = || {
        let source = config
            .group
            .as_deref()
            .ok_or_else(|| CliError::Usage("this command needs --group".into()))?;
        load_group(source, &GroupOptions::default())
    };
    match config.command {
        Command::Classify => commands::classify(&group()?, config),
        Command::Omega => commands::omega(&group()?, config),
        Command::Admissible => commands::admissible(&group()?, config),
        Command::HallBasis => commands::hall_basis_command(config),
        Command::CountCommutators => commands::count_commutators(config),
        Command::NormalForm => commands::normal_form_command(config),
        Command::Verify => verify_command(config),
    }
}

fn verify_command(config: &CommandConfig) -> Result<Output, CliError> {
    let options = verify::SuiteOptions {
        seed: config.seed,
        workers: config.workers.max(2),
        closure_cap: config.closure_cap,
        ..verify::SuiteOptions::default()
    };
    let report = verify::run_suite(&options);
    let violation = (!report.passed).then(|| {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        format!("failed checks: {}", failed.join(", "))
    });
    let text = match config.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            to_csv(&["name", "passed", "detail"], &rows)?
        }
        Format::Text => return Err(CliError::Usage("verify supports --format json|csv".into())),
    };
    Ok(Output { text, violation })
}

/// Runs one parsed command.
pub fn run(config: &CommandConfig) -> Outcome {
    match dispatch(config) {
        Ok(Output {
            text,
            violation: None,
        }) => Outcome {
            status: 0,
            stdout: text,
            stderr: String::new(),
        },
        Ok(Output {
            text,
            violation: Some(v),
        }) => Outcome {
            status: EXIT_INVARIANT,
            stdout: text,
            stderr: format!("error: invariant violated: {v}\n"),
        },
        Err(e) => Outcome {
            status: e.status(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(a) => run(&CommandConfig::from(a)),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
