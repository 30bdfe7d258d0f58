//! Experiment runner for the `riesz` binary.
//!
//! A run expands each config block into rows ([`experiments::tasks`]),
//! executes them on a bounded rayon pool and writes them back in config
//! order. Witnesses can be stored next to the CSV and re-checked with
//! [`verify`].

pub mod config;
pub mod error;
pub mod experiments;
pub mod plot;
pub mod row;
pub mod selftest;

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use riesz_core::C64;
use serde::{Deserialize, Serialize};

pub use config::{Experiment, ExperimentConfig, RunConfig, RunOptions, Setting};
pub use error::CliError;
pub use experiments::RowSpec;
pub use row::{Row, Status};

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_ROW_FAILURE: u8 = 2;

/// Stored witness for one row, `row-NNNNN.json` in the witness directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub row: usize,
    pub spec: RowSpec,
    pub digest: String,
    pub witness: Vec<[f64; 2]>,
}

impl WitnessRecord {
    pub fn values(&self) -> Vec<C64> {
        self.witness
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect()
    }

    pub fn file_name(row: usize) -> String {
        format!("row-{row:05}.json")
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub rows: Vec<Row>,
    pub witnesses: Vec<Option<WitnessRecord>>,
}

impl Report {
    /// 0 when every row is `ok`, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.rows.iter().all(|r| r.status.is_ok()) {
            EXIT_OK
        } else {
            EXIT_ROW_FAILURE
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        row::write_csv(out, &self.rows)
    }

    pub fn write_witnesses(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir)?;
        for rec in self.witnesses.iter().flatten() {
            let text = serde_json::to_string(rec)?;
            fs::write(dir.join(WitnessRecord::file_name(rec.row)), text)?;
        }
        Ok(())
    }
}

/// Validates, then runs every block. Per-row failures are reported in the
/// rows; only configuration problems return `Err`.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let specs: Vec<(usize, RowSpec)> = config
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(b, cfg)| experiments::tasks(cfg).into_iter().map(move |s| (b, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.options.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(Row, Option<Vec<C64>>)> = pool.install(|| {
        specs
            .par_iter()
            .map(|(b, spec)| experiments::execute(spec, &config.blocks[*b]))
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    let mut witnesses = Vec::with_capacity(results.len());
    for (i, ((row, witness), (_, spec))) in results.into_iter().zip(specs).enumerate() {
        witnesses.push(witness.map(|w| WitnessRecord {
            row: i,
            spec,
            digest: row.digest.clone(),
            witness: w.iter().map(|z| [z.re, z.im]).collect(),
        }));
        rows.push(row);
    }
    Ok(Report { rows, witnesses })
}

/// Runs and writes the CSV (stdout when no `out`) plus witnesses.
pub fn run_and_write(config: &RunConfig) -> Result<Report, CliError> {
    let report = run(config)?;
    match &config.options.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            report.write_csv(fs::File::create(path)?)?
        }
        None => report.write_csv(io::stdout().lock())?,
    }
    if let Some(dir) = &config.options.witness_dir {
        report.write_witnesses(dir)?;
    }
    Ok(report)
}

/// Outcome of re-deriving one row from its stored witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub row: usize,
    pub ok: bool,
    pub detail: String,
}

/// Relative agreement demanded between a stored and a re-derived lower bound.
pub const VERIFY_TOL: f64 = 1e-12;

/// Re-derives `estimate_lower` of every row with a digest.
pub fn verify(csv_path: &Path, witness_dir: &Path) -> Result<Vec<Check>, CliError> {
    let records = row::read_csv(csv_path)?;
    let lower_col = row::COLUMNS
        .iter()
        .position(|&c| c == "estimate_lower")
        .expect("column");
    let digest_col = row::COLUMNS.len() - 1;
    let mut checks = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        let digest = &rec[digest_col];
        if digest.is_empty() {
            continue;
        }
        let path = witness_dir.join(WitnessRecord::file_name(i));
        let check = |ok: bool, detail: String| Check { row: i, ok, detail };
        let stored: WitnessRecord = match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)?,
            Err(e) => {
                checks.push(check(false, format!("{}: {e}", path.display())));
                continue;
            }
        };
        let values = stored.values();
        let recomputed = row::digest(&values);
        if recomputed != digest || stored.digest != digest {
            checks.push(check(
                false,
                format!("digest {recomputed} does not match {digest}"),
            ));
            continue;
        }
        let Some(lower) = row::parse_field(&rec[lower_col]) else {
            checks.push(check(false, "row has no lower estimate".into()));
            continue;
        };
        match experiments::evaluate(&stored.spec, &values, usize::MAX) {
            Ok(v) if (v - lower).abs() <= VERIFY_TOL * lower.abs().max(1.0) => {
                checks.push(check(true, format!("{} reproduced", row::format_real(v))))
            }
            Ok(v) => checks.push(check(false, format!("re-derived {v:e}, stored {lower:e}"))),
            Err(e) => checks.push(check(false, e.to_string())),
        }
    }
    Ok(checks)
}
