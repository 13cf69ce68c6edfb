//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 order
//! cap exceeded, 4 method not applicable, 5 target outside the band.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::algebra::{parse_ncpoly, NcPoly};
use crate::error::{OrderError, WitnessError};
use crate::io::{bundle_from_str, bundle_to_string, matrix_from_str, order_report_to_string};
use crate::selftest;
use crate::structure::{compute_order, DEFAULT_ORDER_CAP};
use crate::triangular::UTMatrix;
use crate::witness::{bundle_diff, decompose_sum, image_witness, witness_corner_case, WitnessBundle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;
pub const EXIT_BAND: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "ut-waring", version, about = "Polynomial images on upper triangular rational matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the order of a polynomial as JSON.
    Order {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Find u with p(u) equal to the target.
    Witness(BuildArgs),
    /// Find u, v with p(u) + p(v) equal to the target.
    Decompose(BuildArgs),
    /// Re-evaluate a bundle and compare with its target.
    Verify {
        #[arg(long, visible_alias = "target")]
        bundle: PathBuf,
    },
    /// Run the built-in checks and print a table.
    Selftest {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub n: usize,
    /// Target matrix JSON file.
    #[arg(long)]
    pub target: PathBuf,
    /// Output file; the bundle goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
}

/// A failed command: exit code plus a message for stderr and an optional
/// machine-readable line for stdout.
struct Failure {
    code: i32,
    message: String,
    report: Option<serde_json::Value>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), report: None }
    }
}

type Outcome = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn parse_poly(text: &str) -> Result<NcPoly, Failure> {
    parse_ncpoly(text).map_err(|e| Failure::new(EXIT_INPUT, format!("invalid polynomial: {e}")))
}

fn write_text(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}")))
}

fn inapplicable(reason: String, hint: Option<&str>) -> Failure {
    let mut report = json!({ "status": "inapplicable", "reason": reason });
    if let Some(h) = hint {
        report["hint"] = json!(h);
    }
    Failure { code: EXIT_INAPPLICABLE, message: reason, report: Some(report) }
}

fn witness_failure(e: WitnessError, hint: Option<&str>) -> Failure {
    match e {
        WitnessError::Order(OrderError::OrderExceedsCap { .. }) => Failure::new(EXIT_CAP, e.to_string()),
        WitnessError::Order(_) | WitnessError::Matrix(_) => Failure::new(EXIT_INPUT, e.to_string()),
        WitnessError::TargetNotInBand { .. } => Failure::new(EXIT_BAND, e.to_string()),
        WitnessError::OrderOutOfRange { .. }
        | WitnessError::OrderMismatch { .. }
        | WitnessError::ZeroOnRDiagonal { .. } => inapplicable(e.to_string(), hint),
        WitnessError::InternalVerificationFailure(_) => Failure::new(EXIT_VERIFY, e.to_string()),
    }
}

struct Prepared {
    poly: NcPoly,
    target: UTMatrix,
    order: usize,
}

fn prepare(args: &BuildArgs) -> Result<Prepared, Failure> {
    let poly = parse_poly(&args.poly)?;
    let target = matrix_from_str(&read_file(&args.target)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("invalid target: {e}")))?;
    if target.n() != args.n {
        return Err(Failure::new(EXIT_INPUT, format!("target is {0}x{0}, expected n = {1}", target.n(), args.n)));
    }
    let order = match compute_order(&poly, args.order_cap) {
        Ok(rep) => rep.order,
        Err(e @ OrderError::OrderExceedsCap { .. }) => return Err(Failure::new(EXIT_CAP, e.to_string())),
        Err(e) => return Err(Failure::new(EXIT_INPUT, e.to_string())),
    };
    Ok(Prepared { poly, target, order })
}

fn emit_bundle(bundle: &WitnessBundle, args: &BuildArgs, out: &mut dyn Write) -> Outcome {
    let text = bundle_to_string(bundle);
    match &args.out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display()))),
        None => write_text(out, &text),
    }
}

fn cmd_order(poly: &str, cap: usize, out: &mut dyn Write) -> Outcome {
    let p = parse_poly(poly)?;
    match compute_order(&p, cap) {
        Ok(rep) => write_text(out, &order_report_to_string(&rep)),
        Err(e @ OrderError::OrderExceedsCap { .. }) => Err(Failure::new(EXIT_CAP, e.to_string())),
        Err(e) => Err(Failure::new(EXIT_INPUT, e.to_string())),
    }
}

fn cmd_witness(args: &BuildArgs, out: &mut dyn Write) -> Outcome {
    const HINT: Option<&str> = Some("use decompose");
    let prep = prepare(args)?;
    let n = args.n;
    let bundle = match image_witness(&prep.poly, n, &prep.target, args.seed) {
        Ok(b) => b,
        Err(WitnessError::ZeroOnRDiagonal { .. }) if prep.order + 2 == n => {
            witness_corner_case(&prep.poly, n, &prep.target, args.seed).map_err(|e| witness_failure(e, HINT))?
        }
        Err(e) => return Err(witness_failure(e, HINT)),
    };
    emit_bundle(&bundle, args, out)
}

fn cmd_decompose(args: &BuildArgs, out: &mut dyn Write) -> Outcome {
    let prep = prepare(args)?;
    let bundle = decompose_sum(&prep.poly, args.n, &prep.target, args.seed).map_err(|e| witness_failure(e, None))?;
    emit_bundle(&bundle, args, out)
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> Outcome {
    let bundle = bundle_from_str(&read_file(path)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("invalid bundle: {e}")))?;
    let diff = bundle_diff(&bundle).map_err(|e| Failure::new(EXIT_INPUT, format!("invalid bundle: {e}")))?;
    if diff.is_empty() {
        return write_text(out, "verified");
    }
    for d in &diff {
        write_text(out, &format!("({},{}): expected {}, found {}", d.row, d.col, d.expected, d.found))?;
    }
    Err(Failure::new(EXIT_VERIFY, format!("{} entries differ from the target", diff.len())))
}

fn cmd_selftest(trials: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let rows = selftest::run(trials, seed);
    write_text(out, selftest::format_table(&rows).trim_end())?;
    if rows.iter().all(selftest::CheckRow::ok) {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, "some checks failed"))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Order { poly, order_cap } => cmd_order(poly, *order_cap, out),
        Command::Witness(a) => cmd_witness(a, out),
        Command::Decompose(a) => cmd_decompose(a, out),
        Command::Verify { bundle } => cmd_verify(bundle, out),
        Command::Selftest { trials, seed } => cmd_selftest(*trials, *seed, out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Some(report) = f.report {
                let _ = writeln!(out, "{report}");
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
