//! Command-line front end. [`run`] returns the process exit code so it can be
//! driven from tests without spawning a process.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::formulas::CaseTag;
use crate::params::{is_prime, validate, ParamError, RawParams, Sign};
use crate::verify::acceptance::{run_all, AcceptanceLimits};
use crate::verify::{sweep, verify_theorems, verify_tuple, EtaReport, SweepGrid};
use crate::verify::{SINGLE_ORACLE_BUDGET, SWEEP_ORACLE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Caps the worker count of parallel sweeps.
pub const THREADS_ENV: &str = "ETA_META_THREADS";

/// Header of the CSV output.
pub const CSV_HEADER: [&str; 13] = [
    "p",
    "alpha",
    "beta",
    "epsilon",
    "delta",
    "sign",
    "order",
    "eta_formula",
    "case_tag",
    "eta_oracle",
    "match",
    "n_minus_2",
    "equality_expected",
];

#[derive(Parser, Debug)]
#[command(
    name = "eta-meta",
    version,
    about = "Count conjugacy classes of maximal cyclic subgroups of metacyclic p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one parameter tuple.
    Compute {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long, allow_negative_numbers = true)]
        beta: i64,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i64,
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        /// `+` or `-`.
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        /// Also run the oracle and the theorem checks.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every valid tuple with order at most p^N.
    Sweep {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        max_order_exp: u32,
        /// Comma-separated subset of `+,-`.
        #[arg(long, default_value = "+,-", allow_hyphen_values = true)]
        signs: String,
        /// Largest group order for which the oracle runs.
        #[arg(long, default_value_t = SWEEP_ORACLE_BUDGET)]
        oracle_budget: u64,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite on groups of order at most 2^N.
    Check {
        #[arg(long)]
        max_order_exp: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// One output line per tuple. Skipped oracle runs leave `eta_oracle` and `match` empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputRow {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub epsilon: u32,
    pub delta: u32,
    pub sign: Sign,
    pub order: u64,
    pub eta_formula: u64,
    pub case_tag: CaseTag,
    pub eta_oracle: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub n_minus_2: i64,
    pub equality_expected: bool,
}

impl From<&EtaReport> for OutputRow {
    fn from(r: &EtaReport) -> Self {
        let g = &r.params;
        OutputRow {
            p: g.p(),
            alpha: g.alpha(),
            beta: g.beta(),
            epsilon: g.epsilon(),
            delta: g.delta(),
            sign: g.sign(),
            order: r.order,
            eta_formula: r.eta_formula,
            case_tag: r.case_tag,
            eta_oracle: r.eta_oracle,
            matches: r.matches,
            n_minus_2: r.n_minus_2,
            equality_expected: r.equality_expected,
        }
    }
}

/// Writes rows as CSV with the fixed header and LF line endings.
pub fn write_csv<W: Write>(out: W, rows: &[OutputRow]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

pub fn write_json<W: Write>(mut out: W, rows: &[OutputRow]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.trim().parse::<Sign>().map_err(|e| e.to_string())
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, String> {
    let mut signs = s
        .split(',')
        .map(parse_sign)
        .collect::<Result<Vec<_>, _>>()?;
    signs.sort_by_key(|s| *s == Sign::Negative);
    signs.dedup();
    Ok(signs)
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            // A pool set up by an earlier call in this process stays in place.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => eprintln!("warning: ignoring {THREADS_ENV}={value}"),
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Compute {
            p,
            alpha,
            beta,
            epsilon,
            delta,
            sign,
            verify,
            json,
        } => compute(
            RawArgs {
                p,
                alpha,
                beta,
                epsilon,
                delta,
                sign,
            },
            verify,
            json,
        ),
        Command::Sweep {
            p,
            max_order_exp,
            signs,
            oracle_budget,
            format,
            out,
        } => run_sweep(p, max_order_exp, &signs, oracle_budget, format, out),
        Command::Check { max_order_exp } => check(max_order_exp),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_MISMATCH
        }
    }
}

enum CliError {
    Invalid(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

struct RawArgs {
    p: i64,
    alpha: i64,
    beta: i64,
    epsilon: i64,
    delta: i64,
    sign: String,
}

fn compute(args: RawArgs, verify: bool, json: bool) -> Result<i32, CliError> {
    let sign = parse_sign(&args.sign).map_err(CliError::Invalid)?;
    let params = validate(RawParams {
        p: args.p,
        alpha: args.alpha,
        beta: args.beta,
        epsilon: args.epsilon,
        delta: args.delta,
        sign,
    })
    .map_err(|e| CliError::Invalid(e.to_string()))?;

    let report = verify_tuple(&params, verify, SINGLE_ORACLE_BUDGET);
    let checks = if verify {
        verify_theorems(&params, SINGLE_ORACLE_BUDGET)
    } else {
        Vec::new()
    };
    let row = OutputRow::from(&report);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &row).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{params}")?;
        writeln!(out, "  order        {}", row.order)?;
        writeln!(out, "  eta          {} ({})", row.eta_formula, row.case_tag)?;
        match row.eta_oracle {
            Some(o) => writeln!(out, "  oracle       {o}")?,
            None if verify => writeln!(
                out,
                "  oracle       skipped (order above {SINGLE_ORACLE_BUDGET})"
            )?,
            None => {}
        }
        writeln!(
            out,
            "  n - 2        {}{}",
            row.n_minus_2,
            if row.equality_expected {
                " (equality expected)"
            } else {
                ""
            }
        )?;
        for c in &checks {
            writeln!(out, "  {c}")?;
        }
    }
    let consistent = report.is_consistent() && checks.iter().all(|c| c.passed);
    Ok(if consistent { EXIT_OK } else { EXIT_MISMATCH })
}

fn run_sweep(
    p: i64,
    max_order_exp: u32,
    signs: &str,
    oracle_budget: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let signs = parse_signs(signs).map_err(CliError::Invalid)?;
    if p < 2 || !is_prime(p as u64) {
        return Err(CliError::Invalid(ParamError::NonPrimeP(p).to_string()));
    }
    let prime = p as u64;
    if prime != 2 && signs == [Sign::Negative] {
        return Err(CliError::Invalid(
            ParamError::NegativeTypeRequiresP2(p).to_string(),
        ));
    }
    let grid = SweepGrid {
        p: prime,
        max_order_exponent: max_order_exp,
        signs,
        oracle_budget,
    };
    let reports = sweep(&grid);
    let rows: Vec<OutputRow> = reports.iter().map(OutputRow::from).collect();
    let write = |w: &mut dyn Write| match format {
        Format::Csv => write_csv(w, &rows),
        Format::Json => write_json(w, &rows),
    };
    match out {
        Some(path) => write(&mut io::BufWriter::new(File::create(path)?))?,
        None => write(&mut io::stdout().lock())?,
    }
    let mismatches = reports.iter().filter(|r| !r.is_consistent()).count();
    if mismatches > 0 {
        eprintln!("{mismatches} tuples disagree with the oracle");
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn check(max_order_exp: u32) -> Result<i32, CliError> {
    let criteria = run_all(&AcceptanceLimits::capped(max_order_exp));
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for c in &criteria {
        writeln!(out, "{c}")?;
    }
    let failed = criteria.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        writeln!(out, "{failed} of {} criteria failed", criteria.len())?;
        return Ok(EXIT_MISMATCH);
    }
    writeln!(out, "all {} criteria passed", criteria.len())?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_row_for_order_128() {
        let params = crate::GroupParams::new(2, 4, 3, 0, 2, Sign::Negative).unwrap();
        let row = OutputRow::from(&verify_tuple(&params, true, SWEEP_ORACLE_BUDGET));
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "p,alpha,beta,epsilon,delta,sign,order,eta_formula,case_tag,eta_oracle,match,n_minus_2,equality_expected\n\
             2,4,3,0,2,-,128,6,neg_delta_ge2,6,true,5,false\n"
        );
    }

    #[test]
    fn csv_blank_when_skipped() {
        let params = crate::GroupParams::new(2, 4, 3, 0, 2, Sign::Negative).unwrap();
        let row = OutputRow::from(&verify_tuple(&params, true, 64));
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row]).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .ends_with("\n2,4,3,0,2,-,128,6,neg_delta_ge2,,,5,false\n"));
    }

    #[test]
    fn sign_lists() {
        assert_eq!(
            parse_signs("-,+").unwrap(),
            vec![Sign::Positive, Sign::Negative]
        );
        assert_eq!(parse_signs("+").unwrap(), vec![Sign::Positive]);
        assert!(parse_signs("+,x").is_err());
    }
}
