//! Command-line front end: parse operator files, run any operation, run
//! the verification suites, emit reports and DOT graphs.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on input errors (malformed files, unmet existence preconditions).

use crate::fixture::{parse_operator, render_operator, FixtureError};
use crate::inverse::{self, InverseError};
use crate::operator::FinitePotentOperator;
use crate::order::{self, OrderError, OrderRelation, OrderReport};
use crate::probe;
use crate::verify::{self, SuiteConfig};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "potent",
    version,
    about = "Exact generalized inverses and order relations of finite potent operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print index, AST bases, CN parts, and the EP flag of an operator
    Inspect { file: PathBuf },
    /// Compute a generalized inverse and print it as an operator file
    Inverse {
        #[arg(long, value_enum)]
        kind: KindArg,
        file: PathBuf,
    },
    /// Decide an order relation between two operators
    Order {
        #[arg(long, value_enum)]
        relation: RelationArg,
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Run the identity catalog on one operator, or on random samples
    Verify {
        /// Operator file to check
        #[arg(required_unless_present = "suite", conflicts_with = "suite")]
        file: Option<PathBuf>,
        /// Check randomly sampled operators instead of a file
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        /// Random seed (echoed in the output)
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of sampled operators per stratum
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Dimension of sampled operators
        #[arg(long, default_value_t = 5)]
        dim: usize,
    },
    /// Write the covering relation of a set of operators as a DOT digraph
    Hasse {
        #[arg(long, value_enum)]
        relation: HasseRelationArg,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Output path for the DOT text
        #[arg(long)]
        out: PathBuf,
    },
    /// Demonstrations
    Demo {
        #[command(subcommand)]
        demo: DemoCommand,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Print the preimage-growth study of the truncated weighted shift as CSV
    NonclosedImage {
        /// Largest partial-sum level
        #[arg(long = "max-m", default_value_t = 100)]
        max_m: usize,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum KindArg {
    Drazin,
    Group,
    Mp,
    Core,
    CoreDagger,
    CoreOfMp,
}

impl KindArg {
    fn slug(self) -> &'static str {
        match self {
            KindArg::Drazin => "drazin",
            KindArg::Group => "group",
            KindArg::Mp => "mp",
            KindArg::Core => "core",
            KindArg::CoreDagger => "core-dagger",
            KindArg::CoreOfMp => "core-of-mp",
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum RelationArg {
    Space,
    Core,
    GeneralCore,
}

#[derive(ValueEnum, Clone, Copy)]
enum HasseRelationArg {
    Core,
    GeneralCore,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Fixture {
        path: String,
        source: FixtureError,
    },
    #[error("{0}")]
    Inverse(#[from] InverseError),
    #[error("{0}")]
    Order(#[from] OrderError),
}

/// Entry point with automatic color detection (a terminal on standard
/// output and no NO_COLOR in the environment).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color =
        std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    run_with_color(args, stdout, stderr, color)
}

pub fn run_with_color<I, T>(
    args: I,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stdout, color) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {}", err);
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, color: bool) -> Result<i32, CliError> {
    match command {
        Command::Inspect { file } => {
            let (name, op) = read_operator(&file)?;
            inspect(&name, &op, out);
            Ok(0)
        }
        Command::Inverse { kind, file } => {
            let (name, op) = read_operator(&file)?;
            let result = match kind {
                KindArg::Drazin => inverse::drazin(&op),
                KindArg::Group => inverse::group_inverse(&op)?,
                KindArg::Mp => inverse::moore_penrose(&op),
                KindArg::Core => inverse::core_inverse(&op)?,
                KindArg::CoreDagger => inverse::core_dagger(&op)?,
                KindArg::CoreOfMp => inverse::core_of_mp(&op)?,
            };
            let out_name = name.map(|n| format!("{}({})", kind.slug(), n));
            let _ = write!(out, "{}", render_operator(&result, out_name.as_deref()));
            Ok(0)
        }
        Command::Order {
            relation,
            file_a,
            file_b,
        } => {
            let (name_a, a) = read_operator(&file_a)?;
            let (name_b, b) = read_operator(&file_b)?;
            let relation = match relation {
                RelationArg::Space => OrderRelation::Space,
                RelationArg::Core => OrderRelation::Core,
                RelationArg::GeneralCore => OrderRelation::GeneralCore,
            };
            let report = order::evaluate(relation, &a, &b)?;
            print_order_report(&report, name_a.as_deref(), name_b.as_deref(), out);
            Ok(0)
        }
        Command::Verify {
            file,
            suite,
            seed,
            count,
            dim,
        } => {
            if let Some(file) = file {
                verify_file(&file, seed, out, color)
            } else {
                debug_assert!(suite.is_some());
                verify_random(SuiteConfig { seed, count, dim }, out, color)
            }
        }
        Command::Hasse {
            relation,
            files,
            out: out_path,
        } => {
            let mut named = Vec::new();
            for file in &files {
                let (name, op) = read_operator(file)?;
                named.push((name.unwrap_or_else(|| stem_of(file)), op));
            }
            let relation = match relation {
                HasseRelationArg::Core => OrderRelation::Core,
                HasseRelationArg::GeneralCore => OrderRelation::GeneralCore,
            };
            let dot = order::hasse(&named, relation)?;
            std::fs::write(&out_path, dot).map_err(|source| CliError::Io {
                path: out_path.display().to_string(),
                source,
            })?;
            let _ = writeln!(
                out,
                "wrote covering relation of {} operators to {}",
                named.len(),
                out_path.display()
            );
            Ok(0)
        }
        Command::Demo {
            demo: DemoCommand::NonclosedImage { max_m },
        } => {
            let report = probe::preimage_growth(max_m);
            let _ = write!(out, "{}", report.to_csv());
            Ok(0)
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum SuiteArg {
    Random,
}

fn read_operator(path: &Path) -> Result<(Option<String>, FinitePotentOperator), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_operator(&text).map_err(|source| CliError::Fixture {
        path: path.display().to_string(),
        source,
    })
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn inspect(name: &Option<String>, op: &FinitePotentOperator, out: &mut dyn Write) {
    if let Some(name) = name {
        let _ = writeln!(out, "name: {}", name);
    }
    let _ = writeln!(out, "field: {}", op.field());
    let _ = writeln!(out, "ambient: {}", op.ambient());
    let ast = op.ast();
    let _ = writeln!(out, "index: {}", ast.index);
    let _ = writeln!(out, "EP: {}", inverse::is_ep(op));
    let _ = writeln!(out, "W = {}", ast.invertible_space);
    if ast.tail_in_nilpotent_space {
        let _ = writeln!(
            out,
            "U = {} plus the tail beyond the support window",
            ast.nilpotent_space
        );
    } else {
        let _ = writeln!(out, "U = {}", ast.nilpotent_space);
    }
    let cn = op.cn();
    let _ = writeln!(out, "core part:");
    let _ = write!(out, "{}", cn.core_part.block());
    let _ = writeln!(out, "nilpotent part:");
    let _ = write!(out, "{}", cn.nilpotent_part.block());
}

fn print_order_report(
    report: &OrderReport,
    name_a: Option<&str>,
    name_b: Option<&str>,
    out: &mut dyn Write,
) {
    let _ = writeln!(
        out,
        "relation: {} ({} below {})",
        report.relation,
        name_a.unwrap_or("first operand"),
        name_b.unwrap_or("second operand")
    );
    for (condition, held) in &report.witnesses {
        let _ = writeln!(out, "  {}: {}", condition, held);
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
}

fn status(passed: bool, color: bool) -> &'static str {
    match (passed, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    }
}

fn verify_file(path: &Path, seed: u64, out: &mut dyn Write, color: bool) -> Result<i32, CliError> {
    let (name, op) = read_operator(path)?;
    let _ = writeln!(
        out,
        "operator: {} (field {}, {}, index {})",
        name.unwrap_or_else(|| stem_of(path)),
        op.field(),
        op.ambient(),
        op.index()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcomes = verify::operator_checks(&op, &mut rng);
    let mut failures = 0usize;
    for outcome in &outcomes {
        let _ = writeln!(out, "{} {}", status(outcome.passed, color), outcome.name);
        if !outcome.passed {
            failures += 1;
            if let Some(detail) = &outcome.detail {
                let _ = writeln!(out, "    {}", detail);
            }
        }
    }
    let _ = writeln!(
        out,
        "{} identities checked, {} failed",
        outcomes.len(),
        failures
    );
    Ok(if failures == 0 { 0 } else { 1 })
}

fn verify_random(config: SuiteConfig, out: &mut dyn Write, color: bool) -> Result<i32, CliError> {
    let _ = writeln!(
        out,
        "suite: random  seed: {}  dim: {}  count: {}",
        config.seed, config.dim, config.count
    );
    let report = verify::run_random_suite(config);
    let mut failures = 0usize;
    for stat in &report.identities {
        if stat.failures == 0 {
            let _ = writeln!(
                out,
                "{} {} ({} samples)",
                status(true, color),
                stat.name,
                stat.samples
            );
        } else {
            failures += 1;
            let _ = writeln!(
                out,
                "{} {} ({} of {} samples failed)",
                status(false, color),
                stat.name,
                stat.failures,
                stat.samples
            );
            if let Some(detail) = &stat.first_failure {
                let _ = writeln!(out, "    first failure: {}", detail);
            }
        }
    }
    let _ = writeln!(
        out,
        "summary: {} identities, {} with failures",
        report.identities.len(),
        failures
    );
    Ok(if failures == 0 { 0 } else { 1 })
}
