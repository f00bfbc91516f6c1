//! Output rows. JSON is one object per line; CSV has the fixed header
//! [`CSV_COLUMNS`], with empty cells for absent fields.

use std::io::Write;

use serde::Serialize;
use selzet::Complex;

use crate::parse::format_complex;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Value {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for Value {
    fn from(z: Complex) -> Self {
        Value { re: z.re, im: z.im }
    }
}

/// The evaluation point as given (complex arguments in `re+imi` form).
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
}

impl Input {
    pub fn s(mut self, s: Complex) -> Self {
        self.s = Some(format_complex(s));
        self
    }
    pub fn t(mut self, t: Complex) -> Self {
        self.t = Some(format_complex(t));
        self
    }
    pub fn z(mut self, z: Complex) -> Self {
        self.z = Some(format_complex(z));
        self
    }
    pub fn y(mut self, y: Complex) -> Self {
        self.y = Some(format_complex(y));
        self
    }
    pub fn n(mut self, n: i64) -> Self {
        self.n = Some(n);
        self
    }
    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }
    pub fn rank(mut self, r: u32) -> Self {
        self.rank = Some(r);
        self
    }
}

/// How a value was truncated. Every field is optional because each
/// routine exposes a different part of it.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Truncation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_cutoff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Row {
    pub command: &'static str,
    /// What `value` is, when a command emits several kinds of row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    pub input: Input,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    /// Log of `value` on the branch the library accumulated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    pub truncation: Truncation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Set only for asserted residuals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Row {
    pub fn new(command: &'static str, input: Input) -> Self {
        Row {
            command,
            input,
            ..Default::default()
        }
    }

    pub fn quantity(mut self, q: &str) -> Self {
        self.quantity = Some(q.to_string());
        self
    }

    pub fn value(mut self, v: Complex) -> Self {
        self.value = Some(v.into());
        self
    }

    pub fn real(self, v: f64) -> Self {
        self.value(Complex::new(v, 0.0))
    }

    /// Sets both the log and its exponential.
    pub fn log(mut self, log: Complex) -> Self {
        self.log_value = Some(log.into());
        self.value(log.exp())
    }

    pub fn tail(mut self, bound: f64) -> Self {
        self.tail_bound = Some(bound);
        self
    }

    pub fn truncation(mut self, t: Truncation) -> Self {
        self.truncation = t;
        self
    }

    /// Records a residual, asserting it against `tol` when one is given.
    pub fn check(mut self, residual: f64, tol: Option<f64>) -> Self {
        self.residual = Some(residual);
        self.tolerance = tol;
        self.passed = tol.map(|t| residual <= t);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub const CSV_COLUMNS: [&str; 24] = [
    "command",
    "quantity",
    "s",
    "t",
    "z",
    "y",
    "n",
    "m",
    "rank",
    "value_re",
    "value_im",
    "log_re",
    "log_im",
    "tail_bound",
    "n_cutoff",
    "norm_cutoff",
    "classes_used",
    "terms",
    "max_terms",
    "tail_tolerance",
    "residual",
    "tolerance",
    "passed",
    "note",
];

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn csv_record(r: &Row) -> Vec<String> {
    let tr = &r.truncation;
    vec![
        r.command.to_string(),
        cell(&r.quantity),
        cell(&r.input.s),
        cell(&r.input.t),
        cell(&r.input.z),
        cell(&r.input.y),
        cell(&r.input.n),
        cell(&r.input.m),
        cell(&r.input.rank),
        cell(&r.value.map(|v| v.re)),
        cell(&r.value.map(|v| v.im)),
        cell(&r.log_value.map(|v| v.re)),
        cell(&r.log_value.map(|v| v.im)),
        cell(&r.tail_bound),
        cell(&tr.n_cutoff),
        cell(&tr.norm_cutoff),
        cell(&tr.classes_used),
        cell(&tr.terms),
        cell(&tr.max_terms),
        cell(&tr.tail_tolerance),
        cell(&r.residual),
        cell(&r.tolerance),
        cell(&r.passed),
        cell(&r.note),
    ]
}

pub fn write_rows<W: Write>(rows: &[Row], format: Format, mut w: W) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut w, r).map_err(|e| CliError::Output(e.to_string()))?;
                writeln!(w)?;
            }
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(CSV_COLUMNS).map_err(|e| CliError::Output(e.to_string()))?;
            for r in rows {
                out.write_record(csv_record(r)).map_err(|e| CliError::Output(e.to_string()))?;
            }
            out.flush()?;
            return Ok(());
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Row {
        Row::new("gamma2", Input::default().s(Complex::new(2.0, 0.5)).t(Complex::new(0.0, 0.0)))
            .log(Complex::new(-0.7, 0.1))
            .tail(1e-15)
            .check(3e-12, Some(1e-10))
            .note("a, \"quoted\" note")
    }

    #[test]
    fn json_rows_reparse() {
        let mut buf = Vec::new();
        write_rows(&[sample(), sample()], Format::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["input"]["s"], "2+0.5i");
            assert_eq!(v["passed"], true);
            assert_eq!(v["log_value"]["re"], -0.7);
        }
    }

    #[test]
    fn csv_has_fixed_columns() {
        let mut buf = Vec::new();
        write_rows(&[sample()], Format::Csv, &mut buf).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rd.headers().unwrap().len(), CSV_COLUMNS.len());
        let rec = rd.records().next().unwrap().unwrap();
        assert_eq!(rec.len(), CSV_COLUMNS.len());
        assert_eq!(&rec[2], "2+0.5i");
        assert_eq!(&rec[23], "a, \"quoted\" note");
    }
}
