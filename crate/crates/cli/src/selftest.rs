//! Quick invariant sweep behind `riesz selftest`.

use std::f64::consts::SQRT_2;

use crate::config::{Experiment, ExperimentConfig, RunConfig, RunOptions, Setting};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn block(label: &str, exp: Experiment, f: impl FnOnce(&mut ExperimentConfig)) -> ExperimentConfig {
    let mut c = ExperimentConfig {
        label: label.into(),
        experiment: Some(exp),
        samples: 5,
        ..Default::default()
    };
    f(&mut c);
    c
}

fn suite() -> Vec<(&'static str, ExperimentConfig)> {
    vec![
        (
            "l2 norm is sqrt 2",
            block("dimscan", Experiment::Dimscan, |c| {
                c.k = 3;
                c.dims = vec![1, 2, 3];
            }),
        ),
        (
            "factorization",
            block("factor", Experiment::FactorCheck, |c| {
                c.k = 4;
                c.dims = vec![2, 3];
            }),
        ),
        (
            "heat contraction",
            block("heat", Experiment::Contraction, |c| {
                c.k = 3;
                c.dims = vec![1, 2];
                c.p_list = vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY];
            }),
        ),
        (
            "square function",
            block("square", Experiment::SquareFunction, |c| {
                c.dims = vec![2, 3];
                c.p_list = vec![1.5, 4.0];
            }),
        ),
        (
            "ddstar identity",
            block("ddstar", Experiment::DdstarCheck, |c| {
                c.dims = vec![1, 2];
            }),
        ),
        (
            "hermite identities",
            block("hermite", Experiment::HermiteCheck, |c| {
                c.setting = Setting::Hermite;
                c.n = 6;
                c.dims = vec![1, 2];
            }),
        ),
        (
            "epsilon limit",
            block("eps", Experiment::EpsLimit, |c| {
                c.dims = vec![2];
            }),
        ),
        (
            "sector sup",
            block("sector", Experiment::SectorSup, |c| {
                c.phi = vec![std::f64::consts::FRAC_PI_4];
            }),
        ),
    ]
}

/// Runs each check as its own small scan.
pub fn run(jobs: Option<usize>) -> Result<Vec<SelftestLine>, CliError> {
    let mut lines = Vec::new();
    for (name, cfg) in suite() {
        let exp = cfg.experiment();
        let config = RunConfig {
            blocks: vec![cfg],
            options: RunOptions {
                jobs,
                ..Default::default()
            },
        };
        let report = crate::run(&config)?;
        let failed: Vec<String> = report
            .rows
            .iter()
            .filter(|r| !r.status.is_ok())
            .map(|r| format!("d={:?} p={:?}: {}", r.d, r.p, r.status))
            .collect();
        let mut pass = failed.is_empty();
        let mut detail = format!("{} rows", report.rows.len());
        if exp == Experiment::Dimscan {
            let worst = report
                .rows
                .iter()
                .filter_map(|r| Some((r.lower? - SQRT_2).abs().max((r.upper? - SQRT_2).abs())))
                .fold(0.0f64, f64::max);
            pass &= worst <= 1e-10;
            detail = format!("{detail}, max |norm - sqrt 2| = {worst:.1e}");
        }
        if exp == Experiment::EpsLimit {
            let devs: Vec<f64> = report.rows.iter().filter_map(|r| r.lower).collect();
            let monotone = devs.chunks(4).all(|c| c.windows(2).all(|w| w[1] < w[0]));
            pass &= monotone;
            detail = format!("{detail}, monotone: {monotone}");
        }
        if exp == Experiment::SectorSup {
            let v = report.rows[0].lower.unwrap_or(f64::NAN);
            pass &= (v - 1.0).abs() <= 1e-12;
            detail = format!("{detail}, quarter-sector sup = {v}");
        }
        if !failed.is_empty() {
            detail = format!("{detail}; {}", failed.join("; "));
        }
        lines.push(SelftestLine { name, pass, detail });
    }
    Ok(lines)
}
