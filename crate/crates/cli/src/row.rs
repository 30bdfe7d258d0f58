//! Result rows and their CSV form.

use std::fmt;
use std::io::Write;

use riesz_core::C64;
use sha2::{Digest, Sha256};

use crate::config::{Experiment, Setting};
use crate::error::CliError;

/// Fixed CSV column order.
pub const COLUMNS: [&str; 20] = [
    "experiment",
    "setting",
    "K",
    "d",
    "N",
    "p",
    "r",
    "sigma",
    "epsilon",
    "t",
    "estimate_lower",
    "estimate_upper",
    "aux",
    "method",
    "iterations",
    "converged",
    "seed",
    "status",
    "runtime_ms",
    "digest",
];

pub const RUNTIME_COLUMN: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    NotConverged,
    /// A checked identity or bound exceeded its tolerance.
    Violated,
    Error(String),
}

impl Status {
    pub fn is_ok(&self) -> bool {
        *self == Status::Ok
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => f.write_str("ok"),
            Status::NotConverged => f.write_str("not-converged"),
            Status::Violated => f.write_str("violated"),
            // keep the CSV free of quoting
            Status::Error(msg) => write!(f, "error: {}", msg.replace([',', '\n', '"'], ";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub experiment: Experiment,
    pub setting: Setting,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub p: Option<f64>,
    /// 1-based axis.
    pub r: Option<usize>,
    pub sigma: Option<f64>,
    pub epsilon: Option<f64>,
    pub t: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub aux: Option<f64>,
    pub method: String,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub seed: u64,
    pub status: Status,
    pub runtime_ms: u128,
    pub digest: String,
}

/// Seventeen significant digits; `inf` for infinity.
pub fn format_real(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn opt<V>(v: Option<V>, f: impl Fn(V) -> String) -> String {
    v.map(f).unwrap_or_default()
}

impl Row {
    pub fn fields(&self) -> Vec<String> {
        vec![
            self.experiment.to_string(),
            self.setting.to_string(),
            opt(self.k, |v| v.to_string()),
            opt(self.d, |v| v.to_string()),
            opt(self.n, |v| v.to_string()),
            opt(self.p, format_real),
            opt(self.r, |v| v.to_string()),
            opt(self.sigma, format_real),
            opt(self.epsilon, format_real),
            opt(self.t, format_real),
            opt(self.lower, format_real),
            opt(self.upper, format_real),
            opt(self.aux, format_real),
            self.method.clone(),
            opt(self.iterations, |v| v.to_string()),
            self.converged.to_string(),
            self.seed.to_string(),
            self.status.to_string(),
            self.runtime_ms.to_string(),
            self.digest.clone(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a result CSV as raw string records, checking the header.
pub fn read_csv(path: &std::path::Path) -> Result<Vec<csv::StringRecord>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)?;
    let header = reader.headers()?.clone();
    if header.iter().ne(COLUMNS.iter().copied()) {
        return Err(CliError::Schema(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(reader.records().collect::<Result<_, _>>()?)
}

/// Parses a real written by [`format_real`].
pub fn parse_field(s: &str) -> Option<f64> {
    match s {
        "" => None,
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

/// First 16 hex digits of SHA-256 over the little-endian `(re, im)` pairs.
pub fn digest(witness: &[C64]) -> String {
    let mut h = Sha256::new();
    for z in witness {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    hex::encode(h.finalize())[..16].to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_format_round_trips() {
        for x in [std::f64::consts::SQRT_2, 1e-300, -0.1, 4.0 / 3.0, 0.0] {
            let s = format_real(x);
            assert_eq!(parse_field(&s), Some(x), "{s}");
        }
        assert_eq!(
            format_real(std::f64::consts::SQRT_2),
            "1.4142135623730951e0"
        );
        assert_eq!(format_real(f64::INFINITY), "inf");
    }

    #[test]
    fn digest_is_stable() {
        let w = [C64::new(1.0, 0.0), C64::new(0.0, -2.5)];
        assert_eq!(digest(&w), digest(&[w[0], w[1]]));
        assert_ne!(digest(&w), digest(&w[..1]));
        assert_eq!(digest(&w).len(), 16);
    }

    #[test]
    fn error_status_has_no_commas() {
        assert_eq!(Status::Error("a, b".into()).to_string(), "error: a; b");
    }
}
