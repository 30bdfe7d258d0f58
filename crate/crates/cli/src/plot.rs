//! Matplotlib script generation for dimscan results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::CliError;
use crate::row::{self, parse_field, COLUMNS};

#[derive(Debug, Clone, PartialEq)]
struct Point {
    d: usize,
    lower: f64,
    upper: Option<f64>,
}

fn col(name: &str) -> usize {
    COLUMNS
        .iter()
        .position(|&c| c == name)
        .expect("known column")
}

/// Orders series by numeric `p`, `inf` last.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn label(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

fn py(x: f64) -> String {
    if x.is_infinite() {
        "float(\"inf\")".into()
    } else {
        row::format_real(x)
    }
}

/// Script text for the dimscan rows of `records`: the largest lower (and
/// upper) estimate over axes at each `d`, one series per `p`.
pub fn script_from_records(records: &[csv::StringRecord]) -> Result<String, CliError> {
    let (exp, d_col, p_col, lo_col, up_col) = (
        col("experiment"),
        col("d"),
        col("p"),
        col("estimate_lower"),
        col("estimate_upper"),
    );
    let mut series: BTreeMap<Key, BTreeMap<usize, Point>> = BTreeMap::new();
    for (i, rec) in records.iter().enumerate() {
        if &rec[exp] != "dimscan" {
            continue;
        }
        let bad = |what: &str| CliError::Schema(format!("row {}: bad {what}", i + 1));
        let d: usize = rec[d_col].parse().map_err(|_| bad("d"))?;
        let p = parse_field(&rec[p_col]).ok_or_else(|| bad("p"))?;
        let Some(lower) = parse_field(&rec[lo_col]) else {
            continue;
        };
        let upper = parse_field(&rec[up_col]);
        let point = series
            .entry(Key(p))
            .or_default()
            .entry(d)
            .or_insert(Point { d, lower, upper });
        point.lower = point.lower.max(lower);
        point.upper = match (point.upper, upper) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    let mut data = String::new();
    if series.is_empty() {
        data.push_str("DATA = {}\n");
    } else {
        data.push_str("DATA = {\n");
        for (p, points) in &series {
            let _ = writeln!(data, "    \"{}\": [", label(p.0));
            for pt in points.values() {
                let upper = pt.upper.map_or_else(|| "None".to_string(), py);
                let _ = writeln!(data, "        ({}, {}, {}),", pt.d, py(pt.lower), upper);
            }
            data.push_str("    ],\n");
        }
        data.push_str("}\n");
    }
    Ok(TEMPLATE.replace("@DATA@\n", &data))
}

pub fn script_from_csv(path: &Path) -> Result<String, CliError> {
    script_from_records(&row::read_csv(path)?)
}

const TEMPLATE: &str = r#"#!/usr/bin/env python3
"""Riesz transform norm estimates against dimension.

Usage: python3 plot.py [output.png]
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# p -> [(d, lower, upper or None), ...]
@DATA@

def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "dimscan.png"
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, points in DATA.items():
        ds = [pt[0] for pt in points]
        (line,) = ax.plot(ds, [pt[1] for pt in points], marker="o", label=f"p = {label}")
        upper = [(pt[0], pt[2]) for pt in points if pt[2] is not None]
        if upper:
            ax.plot(
                [u[0] for u in upper],
                [u[1] for u in upper],
                linestyle="--",
                color=line.get_color(),
            )
    ax.set_xlabel("d")
    ax.set_ylabel("norm estimate")
    if DATA:
        ax.legend()
    fig.savefig(out, dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    main()
"#;
