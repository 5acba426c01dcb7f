//! JSON-lines and CSV report writers.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::theorems::VerdictRecord;

use super::SweepRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    JsonLines,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "json" | "jsonl" => Ok(ReportFormat::JsonLines),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Input(format!("unknown format {s:?} (expected json or csv)"))),
        }
    }
}

/// `x` rounded to `digits` significant digits, in positional notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit, e.g. 9.9999 -> 10.000
    let shown = s.trim_start_matches('-').replace('.', "").trim_start_matches('0').len();
    if decimals > 0 && shown > digits {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn opt_f(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| format_sig(v, 10))
}

pub const RECORD_HEADER: [&str; 11] = [
    "graph6", "nu", "m", "delta", "rho", "kappa", "mu1", "k2_factor", "star_cycle_factor", "theorem",
    "verdict",
];

pub const SWEEP_HEADER: [&str; 7] =
    ["nu", "size_threshold", "beta", "rho_threshold", "mu1_threshold", "kappa_k2", "mu1_k2"];

enum Inner<W: Write> {
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

/// Streams records in one format; the CSV header is written on first use.
pub struct ReportWriter<W: Write> {
    inner: Inner<W>,
    header_written: bool,
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::Input(format!("csv: {other:?}")),
    }
}

impl<W: Write> ReportWriter<W> {
    pub fn new(out: W, format: ReportFormat) -> ReportWriter<W> {
        let inner = match format {
            ReportFormat::JsonLines => Inner::Json(out),
            ReportFormat::Csv => Inner::Csv(Box::new(csv::Writer::from_writer(out))),
        };
        ReportWriter { inner, header_written: false }
    }

    fn write<T: Serialize>(&mut self, value: &T, header: &[&str], row: impl FnOnce() -> Vec<String>) -> Result<()> {
        match &mut self.inner {
            Inner::Json(w) => {
                serde_json::to_writer(&mut *w, value).map_err(|e| Error::Io(e.into()))?;
                w.write_all(b"\n")?;
            }
            Inner::Csv(w) => {
                if !self.header_written {
                    w.write_record(header).map_err(csv_err)?;
                    self.header_written = true;
                }
                w.write_record(row()).map_err(csv_err)?;
            }
        }
        Ok(())
    }

    pub fn record(&mut self, r: &VerdictRecord) -> Result<()> {
        self.write(r, &RECORD_HEADER, || {
            vec![
                r.graph6.clone(),
                r.nu.to_string(),
                r.m.to_string(),
                r.delta.to_string(),
                opt_f(r.rho),
                opt_f(r.kappa),
                opt_f(r.mu1),
                opt(r.k2_factor),
                opt(r.star_cycle_factor),
                r.theorem.to_string(),
                r.verdict.to_string(),
            ]
        })
    }

    pub fn sweep_row(&mut self, r: &SweepRow) -> Result<()> {
        self.write(r, &SWEEP_HEADER, || {
            vec![
                r.nu.to_string(),
                opt(r.size_threshold),
                opt_f(r.beta),
                opt_f(r.rho_threshold),
                opt_f(r.mu1_threshold),
                opt_f(r.kappa_k2),
                opt_f(r.mu1_k2),
            ]
        })
    }

    /// Writes the CSV header even when no rows followed.
    pub fn finish(mut self, header: &[&str]) -> Result<W> {
        if let Inner::Csv(w) = &mut self.inner {
            if !self.header_written {
                w.write_record(header).map_err(csv_err)?;
            }
        }
        match self.inner {
            Inner::Json(mut w) => {
                w.flush()?;
                Ok(w)
            }
            Inner::Csv(w) => w.into_inner().map_err(|e| Error::Io(e.into_error())),
        }
    }
}
