//! Command-line front end for `rsumset`.
//!
//! Exit codes: 0 success, 1 bound violation or failed invariant, 2 usage or
//! parse error, 3 instance budget exceeded.

pub mod instance_file;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rsumset::verifier::{
    sweep_with, verify_instance, InstanceFamily, Mode, SweepError, SweepOptions, ViolationTest,
    DEFAULT_BUDGET,
};
use rsumset::{Engine, SetSequence};

use crate::report::{
    BoundOutput, ComputeOutput, Emit, VerifyOutput, ViolationOutput, WitnessOutput,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "rsumset",
    version,
    about = "Restricted sumsets of integer set sequences and their lower bounds"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Include the canonicalization log.
    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Σ^l of the instance.
    Compute {
        file: PathBuf,
        #[arg(long)]
        l: usize,
    },
    /// Evaluate the main bound and the reference bounds.
    Bound {
        file: PathBuf,
        #[arg(long)]
        l: usize,
    },
    /// Check the main bound over a family of instances, or one instance file.
    Verify(VerifyArgs),
    /// Find a representation of c as a sum from l distinct sets.
    Witness {
        file: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "file")]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: usize,
    /// Largest element M; sets are subsets of {0, ..., M} containing 0.
    #[arg(long = "max", required_unless_present = "file")]
    pub max_element: Option<usize>,
    /// Verify a single instance file instead of a family.
    #[arg(long, conflicts_with_all = ["k", "max_element", "seed", "count"])]
    pub file: Option<PathBuf>,
    /// Sample randomly with this seed instead of enumerating.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random instances (implies random mode).
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub proof_invariants: bool,
    #[arg(long)]
    pub find_tight: bool,
    /// Also keep instances where the main bound's hypotheses fail.
    #[arg(long)]
    pub include_inapplicable: bool,
    /// Keep only instances with a nested tail A_l ⊆ ... ⊆ A_k.
    #[arg(long)]
    pub nested_only: bool,
    /// Evaluate every ordered instance instead of one per canonical form.
    #[arg(long)]
    pub no_dedup: bool,
    /// Cross-check each Σ^l against brute-force enumeration.
    #[arg(long)]
    pub oracle: bool,
}

/// Test seam for the sweep's counterexample predicate.
#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    pub violation: ViolationTest,
}

impl Default for Hooks {
    fn default() -> Self {
        Self {
            violation: SweepOptions::default().violation,
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, hooks: &Hooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, hooks) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<rsumset::Error> for Failure {
    fn from(e: rsumset::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<SetSequence, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    instance_file::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check_level(seq: &SetSequence, l: usize) -> Result<(), Failure> {
    if l == 0 || l > seq.k() {
        return Err(Failure::Usage(format!(
            "--l {l} is outside 1..={} for this instance",
            seq.k()
        )));
    }
    Ok(())
}

fn emit<T: Emit>(value: &T, cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.format {
        Format::Json => writeln!(out, "{}", value.to_json())?,
        Format::Text => write!(out, "{}", value.to_text(cli.verbose))?,
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, hooks: &Hooks) -> Result<i32, Failure> {
    let engine = Engine::default();
    match &cli.command {
        Command::Compute { file, l } => {
            let seq = load(file)?;
            check_level(&seq, *l)?;
            emit(&ComputeOutput::new(&engine, &seq, *l)?, cli, out)?;
            Ok(EXIT_OK)
        }
        Command::Bound { file, l } => {
            let seq = load(file)?;
            check_level(&seq, *l)?;
            emit(&BoundOutput::new(&engine, &seq, *l, cli.verbose)?, cli, out)?;
            Ok(EXIT_OK)
        }
        Command::Witness { file, l, c } => {
            let seq = load(file)?;
            check_level(&seq, *l)?;
            emit(&WitnessOutput::new(&engine, &seq, *l, *c)?, cli, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(cli, args, out, hooks),
    }
}

fn verify(
    cli: &Cli,
    args: &VerifyArgs,
    out: &mut dyn Write,
    hooks: &Hooks,
) -> Result<i32, Failure> {
    let opts = SweepOptions {
        budget: args.budget,
        proof_invariants: args.proof_invariants,
        oracle_check: args.oracle,
        violation: hooks.violation,
        ..SweepOptions::default()
    };

    if let Some(file) = &args.file {
        let seq = load(file)?;
        check_level(&seq, args.l)?;
        return match verify_instance(&seq, args.l, &opts) {
            Ok(record) => {
                let code = if record.invariant_failures() > 0 {
                    EXIT_VIOLATION
                } else {
                    EXIT_OK
                };
                emit(&record, cli, out)?;
                Ok(code)
            }
            Err(e) => sweep_failure(e, cli, out),
        };
    }

    let (Some(k), Some(max_element)) = (args.k, args.max_element) else {
        return Err(Failure::Usage(
            "--k and --max are required without --file".into(),
        ));
    };
    let mode = if args.seed.is_some() || args.count.is_some() {
        Mode::Random {
            seed: args.seed.unwrap_or(0),
            count: args.count.unwrap_or(1000),
        }
    } else {
        Mode::Exhaustive
    };
    let family = InstanceFamily {
        k,
        l: args.l,
        max_element,
        mode,
        applicable_only: !args.include_inapplicable,
        nested_only: args.nested_only,
        dedup: !args.no_dedup,
    };

    let mut tight = Vec::new();
    let result = sweep_with(&family, &opts, |r| {
        if args.find_tight && r.tight {
            tight.push(r.clone());
        }
    });
    tight.sort_by_key(|r| (r.instance.k(), r.l, r.max_sum()));
    let result = result.map(|summary| VerifyOutput {
        summary,
        tight_instances: args.find_tight.then_some(tight),
    });

    match result {
        Ok(output) => {
            let failed = output.summary.violations > 0 || output.summary.invariant_failures > 0;
            emit(&output, cli, out)?;
            Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
        }
        Err(e) => sweep_failure(e, cli, out),
    }
}

fn sweep_failure(e: SweepError, cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match e {
        SweepError::Core(e) => Err(e.into()),
        SweepError::Budget { partial, .. } => {
            emit(
                &VerifyOutput {
                    summary: *partial,
                    tight_instances: None,
                },
                cli,
                out,
            )?;
            Ok(EXIT_BUDGET)
        }
        SweepError::Violation {
            record,
            reproduction,
            partial,
        } => {
            emit(
                &ViolationOutput {
                    summary: *partial,
                    record: *record,
                    reproduction_file: instance_file::format(&reproduction.instance),
                    reproduction: *reproduction,
                },
                cli,
                out,
            )?;
            Ok(EXIT_VIOLATION)
        }
    }
}
