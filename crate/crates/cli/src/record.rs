//! Output records and their CSV / JSON encodings.
//!
//! Every floating-point value is rounded to 12 significant digits before it
//! is written, and the shortest representation of the rounded value is
//! printed. Identical inputs therefore produce byte-identical output.

use std::io::Write;

use serde::Serialize;

pub const CSV_HEADER: &str = "n,l,omega,v,b,lower,mean,upper,oracle,exact_swave,lower_source,upper_source";

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest decimal form of `x` after rounding to 12 significant digits.
pub fn format_number(x: f64) -> String {
    let rounded = round_sig(x);
    if rounded.is_finite() {
        serde_json::Number::from_f64(rounded)
            .map(|n| n.to_string())
            .unwrap_or_else(|| rounded.to_string())
    } else {
        rounded.to_string()
    }
}

pub(crate) fn rounded<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub(crate) fn rounded_opt<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_f64(round_sig(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub n: u32,
    pub l: u32,
    #[serde(serialize_with = "rounded")]
    pub omega: f64,
    #[serde(serialize_with = "rounded")]
    pub v: f64,
    #[serde(serialize_with = "rounded")]
    pub b: f64,
    #[serde(serialize_with = "rounded")]
    pub lower: f64,
    #[serde(serialize_with = "rounded")]
    pub mean: f64,
    #[serde(serialize_with = "rounded")]
    pub upper: f64,
    #[serde(serialize_with = "rounded_opt")]
    pub oracle: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub exact_swave: Option<f64>,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl OutputRecord {
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        [
            self.n.to_string(),
            self.l.to_string(),
            format_number(self.omega),
            format_number(self.v),
            format_number(self.b),
            format_number(self.lower),
            format_number(self.mean),
            format_number(self.upper),
            opt(self.oracle),
            opt(self.exact_swave),
            self.lower_source.to_string(),
            self.upper_source.to_string(),
        ]
        .join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A table with a fixed header, written as CSV or as a JSON array of objects.
pub trait Table {
    fn header() -> &'static str;
    fn csv_row(&self) -> String;
}

impl Table for OutputRecord {
    fn header() -> &'static str {
        CSV_HEADER
    }

    fn csv_row(&self) -> String {
        OutputRecord::csv_row(self)
    }
}

pub fn write_table<T, W>(out: &mut W, rows: &[T], format: Format) -> std::io::Result<()>
where
    T: Table + Serialize,
    W: Write,
{
    match format {
        Format::Csv => {
            writeln!(out, "{}", T::header())?;
            for row in rows {
                writeln!(out, "{}", row.csv_row())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
