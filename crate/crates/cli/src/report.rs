use std::io::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{usage, CliResult};
use laurent_lab::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub version: String,
    pub schema: u32,
    pub config: RunConfig,
    pub results: Value,
    pub timing: Timing,
    pub budget_notes: Vec<String>,
}

impl ReportEnvelope {
    /// Serialized report with the timing blanked, for replay comparison.
    pub fn without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.timing.wall_seconds = String::new();
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }
}

/// A header row and string cells; the same strings appear in the JSON rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                        .collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Command output: a JSON payload and, for scans, the table behind it.
#[derive(Clone, Debug, Default)]
pub struct Payload {
    pub results: Value,
    pub table: Option<Table>,
    pub budget_notes: Vec<String>,
}

/// Shortest round-trip rendering of a float.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn int<T: ToString>(x: T) -> String {
    x.to_string()
}

pub fn opt<T>(x: Option<T>, f: impl Fn(T) -> String) -> String {
    x.map(f).unwrap_or_default()
}

/// `x` rounded to `digits` significant digits, as `d.ddd…e±x`.
pub fn decimal(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let digits = digits.max(1);
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let ten = BigInt::from(10);
    // e = floor(log10 a), estimated from bit lengths then corrected.
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a >= pow(e + 1) {
        e += 1;
    }
    while a < pow(e) {
        e -= 1;
    }
    let scaled = &a * pow(digits as i64 - 1 - e);
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut m = (scaled + half).floor().to_integer();
    if m >= num_traits::pow(ten.clone(), digits) {
        m /= &ten;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

pub fn exact(x: &Rational) -> String {
    x.to_string()
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn s(x: impl Into<String>) -> Value {
    Value::String(x.into())
}

/// Writes the report to `output_path` (or stdout) in the configured format.
pub fn emit(cfg: &RunConfig, env: &ReportEnvelope, table: Option<&Table>) -> CliResult<()> {
    let mut buf: Vec<u8> = Vec::new();
    match cfg.output_format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut buf, env)?;
            buf.push(b'\n');
        }
        OutputFormat::Csv => match table {
            Some(t) => t.write_csv(&mut buf)?,
            None => {
                return usage(format!(
                    "`{}` is not tabular; use --format json",
                    cfg.command.name()
                ))
            }
        },
    }
    match &cfg.output_path {
        Some(p) => std::fs::write(p, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

/// Appends finished rows to `<output_path>.partial` as they arrive, so an
/// interrupted scan keeps what it computed.
pub struct RowSink {
    file: Option<std::fs::File>,
}

impl RowSink {
    pub fn for_config(cfg: &RunConfig) -> CliResult<Self> {
        let file = match &cfg.output_path {
            Some(p) => Some(std::fs::File::create(format!("{p}.partial"))?),
            None => None,
        };
        Ok(RowSink { file })
    }

    pub fn disabled() -> Self {
        RowSink { file: None }
    }

    pub fn row(&mut self, header: &[&str], row: &[String]) -> CliResult<()> {
        if let Some(f) = &mut self.file {
            let m: Map<String, Value> = header
                .iter()
                .zip(row)
                .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                .collect();
            writeln!(f, "{}", Value::Object(m))?;
            f.flush()?;
        }
        Ok(())
    }

    pub fn finish(self, cfg: &RunConfig) -> CliResult<()> {
        if self.file.is_some() {
            if let Some(p) = &cfg.output_path {
                std::fs::remove_file(format!("{p}.partial"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use laurent_lab::poly::rat;

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 5), "3.3333e-1");
        assert_eq!(decimal(&rat(2, 3), 3), "6.67e-1");
        assert_eq!(decimal(&rat(-1000, 1), 2), "-1.0e3");
        assert_eq!(decimal(&rat(999_999, 1_000_000), 3), "1.00e0");
        assert_eq!(decimal(&rat(7, 1), 1), "7e0");
        assert_eq!(decimal(&Rational::zero(), 4), "0");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 12345.678] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
