//! Report records and their serialized forms.
//!
//! Every verification case produces one [`VerifyRecord`]; the field order of
//! the struct is the field order of the JSON objects and of the CSV header,
//! and both sinks emit one record per line so output can be consumed as a
//! stream.

use serde::Serialize;
use std::io::{self, Write};

/// One verification case: which series was checked, where, at what working
/// precision, and how the two sides compared.
///
/// `status` is `"ok"` exactly when `abs_error` passed the tolerance of the
/// family's check; the decimal strings carry the working precision's
/// significant digits (except for the float-backed transform checks, which
/// cap at the 17 digits an `f64` can hold). Cases that could not be
/// evaluated at all (unparsable or unsupported point) keep empty value
/// strings and `status = "fail"`.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    /// Family token, e.g. `"thm3.2"`, `"cor4.3"`, `"hyp8.8"`, `"limit7.1"`.
    pub family: String,
    /// Arcsine power behind the family.
    pub p: u32,
    /// Shift parameter of the case.
    pub n: u64,
    /// Evaluation point as the token it was requested with.
    pub x: String,
    /// Working precision in significant decimal digits.
    pub digits: u32,
    /// Left-hand side (series / scan value), scientific decimal.
    pub lhs: String,
    /// Right-hand side (closed form / target), scientific decimal.
    pub rhs: String,
    /// `|lhs - rhs|`, scientific decimal.
    pub abs_error: String,
    /// Whether every truncation in the case carried a certified bound.
    pub certified: bool,
    /// Series terms (or integrand evaluations) the case consumed.
    pub terms_used: u64,
    /// `"ok"` or `"fail"`.
    pub status: String,
}

/// CSV header; matches the `VerifyRecord` field names in declaration order.
pub const CSV_HEADER: &str = "family,p,n,x,digits,lhs,rhs,abs_error,certified,terms_used,status";

/// Output encodings for record streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RecordFormat {
    /// One JSON object per line.
    Json,
    /// Header row, then one comma-separated row per record.
    Csv,
}

impl VerifyRecord {
    /// Comma-separated row in header order. None of the fields can contain
    /// a comma or a quote (tokens, decimals, and the two status words), so
    /// no escaping is needed.
    fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.p,
            self.n,
            self.x,
            self.digits,
            self.lhs,
            self.rhs,
            self.abs_error,
            self.certified,
            self.terms_used,
            self.status
        )
    }
}

/// Write the record stream in the chosen format.
pub fn write_records(
    records: &[VerifyRecord],
    format: RecordFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        RecordFormat::Json => {
            for r in records {
                let line = serde_json::to_string(r).expect("record serialization cannot fail");
                writeln!(out, "{line}")?;
            }
        }
        RecordFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
    }
    Ok(())
}
