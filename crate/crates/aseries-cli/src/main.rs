//! `aseries` — verification grids and exact constants for the four
//! arcsine-power series families.
//!
//! Subcommands:
//! - `verify` runs a family's grid and streams one record per case (JSON
//!   lines or CSV) to stdout or a file;
//! - `pi` rescales an endpoint sum against `pi^p` and prints the exact
//!   error term where one exists;
//! - `table` prints the exact closed-form constants of a corollary;
//! - `closed-form` prints a single exact constant.
//!
//! Exit codes: 0 when everything verified, 1 when any case failed, 2 on
//! flag misuse (including points outside a family's domain). Records go to
//! stdout; diagnostics go to stderr. The default working precision comes
//! from `ASERIES_DIGITS` (50 when unset); `--digits` overrides it.

/// Print one line to stdout, ending the run quietly when the reader has
/// hung up (e.g. the output is piped into `head`) instead of panicking.
macro_rules! say {
    ($($arg:tt)*) => {
        crate::say_line(std::format_args!($($arg)*))
    };
}

mod families;
mod records;

use aseries::{corollary_exact, limit_pi_exact_error, limit_scan_pi, pi, rat, PrecisionCtx, XCase};
use clap::{Args, Parser, Subcommand};
use families::{parse_n_range, rat_sci, run_family, GridSpec, UsageError};
use records::{write_records, RecordFormat, VerifyRecord};

#[derive(Parser)]
#[command(
    name = "aseries",
    version,
    about = "Certified evaluation and verification of arcsine-power central-binomial series"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification grid; one record per case.
    Verify(VerifyArgs),
    /// Rescale an endpoint sum against pi^p and print the error terms.
    Pi(PiArgs),
    /// Print the exact closed-form constants of a corollary table.
    Table(TableArgs),
    /// Print one exact closed-form constant.
    ClosedForm(ClosedFormArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Family token: thm3.2 | thm4.2 | thm5.2 | thm6.2 | cor3.3 | cor4.3 |
    /// cor5.3 | cor6.3 | cor3.3a | cor4.4a | hyp8.8 | hyp8.11 | limit7.1 |
    /// limit7.8 | limit7.9 | transform2.1 | tail3.12 | tail3.13 | tail4.20 |
    /// tail4.21
    #[arg(long)]
    family: String,
    /// Arcsine power for the families that take one (limit7.1).
    #[arg(long)]
    p: Option<u32>,
    /// Inclusive shift range "a..b"; each family has its own default.
    #[arg(long = "n-range")]
    n_range: Option<String>,
    /// Evaluation point: exact token (1, 1/2, sqrt2/2, sqrt3/2), fraction,
    /// or decimal. Repeatable.
    #[arg(long = "x")]
    x: Vec<String>,
    /// Working precision in significant decimal digits (10..=10000).
    #[arg(long)]
    digits: Option<u32>,
    /// Record encoding.
    #[arg(long, value_enum, default_value_t = RecordFormat::Json)]
    format: RecordFormat,
    /// Output destination: a path, or "-" / "stdout".
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct PiArgs {
    /// Arcsine power p in 1..=4; the scan approaches pi^p.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    power: u32,
    /// Shift at which the scan is reported.
    #[arg(long, default_value_t = 10)]
    n: u64,
    /// Working precision in significant decimal digits (10..=10000).
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TableFormat {
    Markdown,
    Json,
    Csv,
}

#[derive(Args)]
struct TableArgs {
    /// Corollary id: 3.3a | 4.4a | 4.3 | 5.3 | 6.3
    #[arg(long)]
    corollary: String,
    /// Inclusive shift range "a..b"; defaults to the printed table's range.
    #[arg(long = "n-range")]
    n_range: Option<String>,
    /// Table encoding.
    #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
    format: TableFormat,
}

#[derive(Args)]
struct ClosedFormArgs {
    /// Family token: cor3.3 | cor4.3 | cor5.3 | cor6.3
    #[arg(long)]
    family: String,
    /// Shift.
    #[arg(long)]
    n: u64,
    /// Exact evaluation point: 1 | 1/2 | sqrt2/2 | sqrt3/2
    #[arg(long, default_value = "1")]
    x: String,
}

fn main() {
    let code = match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn real_main() -> Result<i32, UsageError> {
    // Flag misuse inside clap (unknown flags, bad enum values, out-of-range
    // --power) already exits with code 2 here.
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify(a) => cmd_verify(&a),
        Cmd::Pi(a) => cmd_pi(&a),
        Cmd::Table(a) => cmd_table(&a),
        Cmd::ClosedForm(a) => cmd_closed_form(&a),
    }
}

/// Precision: flag, else `ASERIES_DIGITS`, else 50.
fn resolve_digits(flag: Option<u32>) -> Result<u32, UsageError> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var("ASERIES_DIGITS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("ASERIES_DIGITS must be an integer, got {s:?}")))?,
            Err(std::env::VarError::NotPresent) => 50,
            Err(e) => return Err(UsageError(format!("cannot read ASERIES_DIGITS: {e}"))),
        },
    };
    if !(10..=10_000).contains(&digits) {
        return Err(UsageError(format!(
            "digits must be in 10..=10000, got {digits}"
        )));
    }
    Ok(digits)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, UsageError> {
    let digits = resolve_digits(a.digits)?;
    let n_range = match &a.n_range {
        Some(s) => Some(parse_n_range(s)?),
        None => None,
    };
    let spec = GridSpec {
        family: &a.family,
        p_flag: a.p,
        n_range,
        xs: &a.x,
        digits,
    };
    let recs = run_family(&spec)?;
    emit(&recs, a.format, &a.out)?;
    Ok(if recs.iter().any(|r| r.status != "ok") {
        1
    } else {
        0
    })
}

fn emit(recs: &[VerifyRecord], format: RecordFormat, out: &str) -> Result<(), UsageError> {
    // A reader that stops consuming stdout is not a failure of ours: the
    // records are already graded, so the exit code stays meaningful.
    let write_err = |e: std::io::Error| {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Ok(())
        } else {
            Err(UsageError(format!("cannot write {out:?}: {e}")))
        }
    };
    if out == "-" || out == "stdout" {
        let stdout = std::io::stdout();
        write_records(recs, format, &mut stdout.lock()).or_else(write_err)
    } else {
        let mut file = std::fs::File::create(out)
            .map_err(|e| UsageError(format!("cannot create {out:?}: {e}")))?;
        write_records(recs, format, &mut file).or_else(write_err)
    }
}

fn say_line(line: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(line).and_then(|()| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn cmd_pi(a: &PiArgs) -> Result<i32, UsageError> {
    let digits = resolve_digits(a.digits)?;
    let ctx = PrecisionCtx::new(digits);
    let rows = limit_scan_pi(a.power, a.n, &ctx).expect("power range enforced by clap");
    let row = rows.last().expect("a scan always yields rows");
    let pi_p = pi(&ctx).pow_floor(a.power);
    say!("scaled = {}", row.scaled_value.to_decimal_sci(digits));
    say!("pi^{} = {}", a.power, pi_p.to_decimal_sci(digits));
    say!("abs_error = {}", rat_sci(&row.abs_error, &ctx));
    if let Some(e) = limit_pi_exact_error(a.power, a.n).expect("power range enforced by clap") {
        // Printed as pi^p minus the scan value — the remaining (positive)
        // gap, exactly.
        say!("exact_error = {}", e.scale(&rat(-1, 1)));
    }
    Ok(0)
}

fn cmd_table(a: &TableArgs) -> Result<i32, UsageError> {
    let (p, xc, default_range) = match a.corollary.as_str() {
        "3.3a" => (1, XCase::Half, (0, 10)),
        "4.4a" => (2, XCase::Half, (0, 6)),
        "4.3" => (2, XCase::One, (0, 10)),
        "5.3" => (3, XCase::One, (0, 10)),
        "6.3" => (4, XCase::One, (0, 10)),
        other => {
            return Err(UsageError(format!(
                "unsupported corollary {other:?}; known ids: 3.3a, 4.4a, 4.3, 5.3, 6.3"
            )))
        }
    };
    let (lo, hi) = match &a.n_range {
        Some(s) => parse_n_range(s)?,
        None => default_range,
    };
    // The x = 1/2 tables list even shifts only.
    let even_only = matches!(a.corollary.as_str(), "3.3a" | "4.4a");
    let mut rows: Vec<(u64, String)> = Vec::new();
    for n in lo..=hi {
        if even_only && n % 2 == 1 {
            continue;
        }
        let value = corollary_exact(p, n, xc).map_err(|e| UsageError(e.to_string()))?;
        rows.push((n, value.to_string()));
    }
    match a.format {
        TableFormat::Markdown => {
            say!("| n | value |");
            say!("| --- | --- |");
            for (n, v) in &rows {
                say!("| {n} | {v} |");
            }
        }
        TableFormat::Json => {
            for (n, v) in &rows {
                say!("{}", serde_json::json!({ "n": n, "value": v }));
            }
        }
        TableFormat::Csv => {
            say!("n,value");
            for (n, v) in &rows {
                say!("{n},{v}");
            }
        }
    }
    Ok(0)
}

fn cmd_closed_form(a: &ClosedFormArgs) -> Result<i32, UsageError> {
    let p = match a.family.as_str() {
        "cor3.3" => 1,
        "cor4.3" => 2,
        "cor5.3" => 3,
        "cor6.3" => 4,
        other => return Err(UsageError(format!(
            "unsupported family {other:?}; closed forms exist for cor3.3, cor4.3, cor5.3, cor6.3"
        ))),
    };
    let xc = match a.x.as_str() {
        "1" => XCase::One,
        "1/2" => XCase::Half,
        "sqrt2/2" => XCase::HalfSqrt2,
        "sqrt3/2" => XCase::HalfSqrt3,
        other => {
            return Err(UsageError(format!(
                "closed forms require an exact x token (1, 1/2, sqrt2/2, sqrt3/2), got {other:?}"
            )))
        }
    };
    let value = corollary_exact(p, a.n, xc).map_err(|e| UsageError(e.to_string()))?;
    say!("{value}");
    Ok(0)
}
