//! Flat `key = value` experiment files.
//!
//! Top-level keys apply to every block; a `[label]` line opens a block whose
//! keys override them. Values are scalars or comma-separated lists. Reals
//! accept `inf`, fractions like `4/3` and multiples of `pi` (`pi/4`).
//! Dimension lists accept inclusive ranges (`1..5`).

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use riesz_core::index::checked_volume;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 24301;
pub const DEFAULT_MEM_CAP: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Dimscan,
    FactorCheck,
    Contraction,
    SectorSup,
    HermiteCheck,
    EpsLimit,
    SquareFunction,
    DdstarCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Dimscan,
        Experiment::FactorCheck,
        Experiment::Contraction,
        Experiment::SectorSup,
        Experiment::HermiteCheck,
        Experiment::EpsLimit,
        Experiment::SquareFunction,
        Experiment::DdstarCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Dimscan => "dimscan",
            Experiment::FactorCheck => "factor-check",
            Experiment::Contraction => "contraction",
            Experiment::SectorSup => "sector-sup",
            Experiment::HermiteCheck => "hermite-check",
            Experiment::EpsLimit => "eps-limit",
            Experiment::SquareFunction => "square-function",
            Experiment::DdstarCheck => "ddstar-check",
        }
    }

    fn supports(self, setting: Setting) -> bool {
        match self {
            Experiment::Dimscan
            | Experiment::FactorCheck
            | Experiment::EpsLimit
            | Experiment::SectorSup => true,
            Experiment::Contraction | Experiment::SquareFunction | Experiment::DdstarCheck => {
                setting == Setting::Cyclic
            }
            Experiment::HermiteCheck => setting == Setting::Hermite,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Cyclic,
    Hermite,
}

impl Setting {
    pub fn name(self) -> &'static str {
        match self {
            Setting::Cyclic => "cyclic",
            Setting::Hermite => "hermite",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cyclic" => Ok(Setting::Cyclic),
            "hermite" => Ok(Setting::Hermite),
            _ => Err(format!("unknown setting `{s}`")),
        }
    }
}

/// Measure driving the cyclic walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    /// `(δ_{g₀} + δ_{−g₀})/2`
    Walk,
    /// `(δ₀ + δ₁ + δ₋₁)/3`
    Lazy,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Walk => "walk",
            MeasureKind::Lazy => "lazy",
        }
    }
}

impl FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "walk" => Ok(MeasureKind::Walk),
            "lazy" => Ok(MeasureKind::Lazy),
            _ => Err(format!("unknown measure `{s}`")),
        }
    }
}

/// One experiment block after layering defaults, file keys and overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub label: String,
    pub experiment: Option<Experiment>,
    pub setting: Setting,
    pub k: usize,
    pub dims: Vec<usize>,
    pub n: usize,
    pub p_list: Vec<f64>,
    pub sigma: f64,
    pub g0: usize,
    pub measure: MeasureKind,
    pub epsilons: Vec<f64>,
    pub times: Vec<f64>,
    /// 1-based axes; `None` means every axis.
    pub axes: Option<Vec<usize>>,
    pub phi: Vec<f64>,
    pub angular: usize,
    pub radial: usize,
    /// Quadrature nodes per axis; 0 picks `2(N + 1)`.
    pub nodes: usize,
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub maxiter: usize,
    pub samples: usize,
    pub mem_cap: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            label: String::new(),
            experiment: None,
            setting: Setting::Cyclic,
            k: 4,
            dims: vec![1, 2, 3, 4],
            n: 8,
            p_list: vec![2.0],
            sigma: 0.5,
            g0: 1,
            measure: MeasureKind::Walk,
            epsilons: vec![1.0, 0.1, 0.01, 0.001],
            times: vec![0.1, 1.0, 10.0],
            axes: None,
            phi: Vec::new(),
            angular: 17,
            radial: 121,
            nodes: 0,
            restarts: 16,
            seed: DEFAULT_SEED,
            tol: 1e-9,
            maxiter: 1000,
            samples: 20,
            mem_cap: DEFAULT_MEM_CAP,
        }
    }
}

/// Options that belong to the whole run rather than one block.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub witness_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub blocks: Vec<ExperimentConfig>,
    pub options: RunOptions,
}

/// A `key = value` pair with its source line (0 for command-line overrides).
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

impl Entry {
    /// Parses a `key=value` command-line override.
    pub fn parse_override(s: &str) -> Result<Self, CliError> {
        let (key, value) = s.split_once('=').ok_or_else(|| CliError::Config {
            line: 0,
            msg: format!("override `{s}` is not key=value"),
        })?;
        Ok(Entry {
            key: normalize_key(key),
            value: value.trim().to_string(),
            line: 0,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
struct RawFile {
    global: Vec<Entry>,
    blocks: Vec<(String, Vec<Entry>)>,
}

fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

fn parse_raw(text: &str) -> Result<RawFile, CliError> {
    let mut raw = RawFile::default();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(label) = line.strip_prefix('[') {
            let label = label
                .strip_suffix(']')
                .ok_or_else(|| CliError::Config {
                    line: line_no,
                    msg: "unterminated block header".into(),
                })?
                .trim();
            if label.is_empty() || raw.blocks.iter().any(|(l, _)| l == label) {
                return Err(CliError::Config {
                    line: line_no,
                    msg: format!("empty or repeated block `{label}`"),
                });
            }
            raw.blocks.push((label.to_string(), Vec::new()));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
            line: line_no,
            msg: format!("expected key = value, got `{line}`"),
        })?;
        let entry = Entry {
            key: normalize_key(key),
            value: value.trim().to_string(),
            line: line_no,
        };
        match raw.blocks.last_mut() {
            Some((_, entries)) => entries.push(entry),
            None => raw.global.push(entry),
        }
    }
    Ok(raw)
}

const RUN_KEYS: [&str; 3] = ["out", "jobs", "witness_dir"];

impl RunConfig {
    /// Layers defaults < file < overrides. Run-level keys are only allowed at
    /// the top of the file or as overrides.
    pub fn build(file: Option<&str>, overrides: &[Entry]) -> Result<Self, CliError> {
        let raw = match file {
            Some(text) => parse_raw(text)?,
            None => RawFile::default(),
        };
        let mut options = RunOptions::default();
        for entry in raw.global.iter().chain(overrides) {
            if RUN_KEYS.contains(&entry.key.as_str()) {
                options.apply(entry)?;
            }
        }
        let layers: Vec<(String, &[Entry])> = if raw.blocks.is_empty() {
            vec![(String::from("main"), &[][..])]
        } else {
            raw.blocks
                .iter()
                .map(|(l, e)| (l.clone(), e.as_slice()))
                .collect()
        };
        let mut blocks = Vec::new();
        for (label, entries) in layers {
            let mut cfg = ExperimentConfig {
                label,
                ..ExperimentConfig::default()
            };
            for entry in &raw.global {
                if !RUN_KEYS.contains(&entry.key.as_str()) {
                    cfg.apply(entry)?;
                }
            }
            for entry in entries {
                if RUN_KEYS.contains(&entry.key.as_str()) {
                    return Err(CliError::Config {
                        line: entry.line,
                        msg: format!(
                            "`{}` applies to the whole run; set it before the first block",
                            entry.key
                        ),
                    });
                }
                cfg.apply(entry)?;
            }
            for entry in overrides {
                if !RUN_KEYS.contains(&entry.key.as_str()) {
                    cfg.apply(entry)?;
                }
            }
            blocks.push(cfg);
        }
        Ok(RunConfig { blocks, options })
    }

    pub fn load(path: Option<&Path>, overrides: &[Entry]) -> Result<Self, CliError> {
        let text = path.map(std::fs::read_to_string).transpose()?;
        Self::build(text.as_deref(), overrides)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.options.jobs == Some(0) {
            return Err(CliError::Validation("jobs must be at least 1".into()));
        }
        for block in &self.blocks {
            block.validate()?;
        }
        Ok(())
    }
}

impl RunOptions {
    fn apply(&mut self, entry: &Entry) -> Result<(), CliError> {
        let v = entry.value.as_str();
        match entry.key.as_str() {
            "out" => self.out = Some(PathBuf::from(v)),
            "witness_dir" => self.witness_dir = Some(PathBuf::from(v)),
            "jobs" => self.jobs = Some(parse_scalar(entry)?),
            _ => unreachable!("not a run key"),
        }
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn apply(&mut self, entry: &Entry) -> Result<(), CliError> {
        let v = entry.value.as_str();
        match entry.key.as_str() {
            "experiment" => self.experiment = Some(parse_scalar(entry)?),
            "setting" => self.setting = parse_scalar(entry)?,
            "k" => self.k = parse_scalar(entry)?,
            "d" | "d_range" | "dims" => self.dims = parse_dims(entry)?,
            "n" => self.n = parse_scalar(entry)?,
            "p" | "p_list" => self.p_list = parse_reals(entry)?,
            "sigma" => self.sigma = parse_real(v).map_err(|m| bad(entry, m))?,
            "g0" => self.g0 = parse_scalar(entry)?,
            "measure" => self.measure = parse_scalar(entry)?,
            "epsilon" | "eps" | "epsilon_list" => self.epsilons = parse_reals(entry)?,
            "t" | "t_list" => self.times = parse_reals(entry)?,
            "r" | "axes" => {
                self.axes = if v == "all" {
                    None
                } else {
                    Some(parse_list(entry)?)
                };
            }
            "phi" => self.phi = parse_reals(entry)?,
            "angular" => self.angular = parse_scalar(entry)?,
            "radial" => self.radial = parse_scalar(entry)?,
            "nodes" => self.nodes = parse_scalar(entry)?,
            "restarts" => self.restarts = parse_scalar(entry)?,
            "seed" => self.seed = parse_scalar(entry)?,
            "tol" => self.tol = parse_real(v).map_err(|m| bad(entry, m))?,
            "maxiter" => self.maxiter = parse_scalar(entry)?,
            "samples" => self.samples = parse_scalar(entry)?,
            "mem_cap" => self.mem_cap = parse_scalar(entry)?,
            other => return Err(bad(entry, format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn experiment(&self) -> Experiment {
        self.experiment
            .expect("validated config names an experiment")
    }

    /// 0-based axes to scan in dimension `d`.
    pub fn axes_for(&self, d: usize) -> Vec<usize> {
        match &self.axes {
            None => (0..d).collect(),
            Some(list) => list.iter().filter(|&&r| r <= d).map(|r| r - 1).collect(),
        }
    }

    pub fn quadrature_nodes(&self) -> usize {
        if self.nodes == 0 {
            2 * (self.n + 1)
        } else {
            self.nodes
        }
    }

    fn uses_p(&self) -> bool {
        match self.experiment() {
            Experiment::Dimscan
            | Experiment::Contraction
            | Experiment::HermiteCheck
            | Experiment::SquareFunction => true,
            Experiment::SectorSup => self.phi.is_empty(),
            _ => false,
        }
    }

    fn uses_dims(&self) -> bool {
        self.experiment() != Experiment::SectorSup
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Validation(format!("[{}] {msg}", self.label)));
        let Some(exp) = self.experiment else {
            return fail("no experiment given".into());
        };
        if !exp.supports(self.setting) {
            return fail(format!(
                "{exp} does not run in the {} setting",
                self.setting
            ));
        }
        if self.uses_dims() {
            if self.dims.is_empty() {
                return fail("empty d-range".into());
            }
            if self.dims.contains(&0) {
                return fail("dimensions start at 1".into());
            }
            let sizes: Vec<(usize, usize)> = match self.setting {
                Setting::Cyclic => {
                    if self.k < 2 {
                        return fail(format!("K = {} is too small", self.k));
                    }
                    self.dims.iter().map(|&d| (self.k, d)).collect()
                }
                Setting::Hermite => {
                    if self.n == 0 {
                        return fail("N must be at least 1".into());
                    }
                    let mut sizes: Vec<_> = self.dims.iter().map(|&d| (self.n + 1, d)).collect();
                    if exp == Experiment::HermiteCheck && self.p_list.iter().any(|&p| p != 2.0) {
                        if self.quadrature_nodes() < 2 * self.n {
                            return fail(format!(
                                "{} quadrature nodes cannot resolve degree {}",
                                self.quadrature_nodes(),
                                self.n
                            ));
                        }
                        sizes.extend(self.dims.iter().map(|&d| (self.quadrature_nodes(), d)));
                    }
                    sizes
                }
            };
            for (base, d) in sizes {
                let points = checked_volume(&vec![base; d]);
                if points.is_none_or(|v| v > self.mem_cap as u128) {
                    return fail(format!(
                        "{base}^{d} points exceed the memory cap of {} (raise mem-cap to proceed)",
                        self.mem_cap
                    ));
                }
            }
            if let Some(axes) = &self.axes {
                if axes.is_empty() || axes.contains(&0) {
                    return fail("axes are 1-based and must be non-empty".into());
                }
            }
        }
        if self.setting == Setting::Cyclic && self.uses_dims() {
            if self.g0 == 0 || self.g0 >= self.k || gcd(self.g0, self.k) != 1 {
                return fail(format!("g0 = {} does not generate Z_{}", self.g0, self.k));
            }
            if self.measure == MeasureKind::Lazy && self.g0 != 1 {
                return fail("the lazy measure pairs with g0 = 1".into());
            }
        }
        if self.uses_p() {
            if self.p_list.is_empty() {
                return fail("empty p-list".into());
            }
            let endpoints_ok = matches!(
                exp,
                Experiment::Dimscan | Experiment::Contraction | Experiment::HermiteCheck
            );
            for &p in &self.p_list {
                let interior = p > 1.0 && p.is_finite();
                let endpoint = p == 1.0 || p == f64::INFINITY;
                if !(interior || endpoints_ok && endpoint) {
                    return fail(format!("p = {p} not allowed for {exp}"));
                }
                if exp == Experiment::Dimscan && self.setting == Setting::Hermite && p != 2.0 {
                    return fail(
                        "the Hermite dimscan is exact at p = 2 only; use hermite-check for other p"
                            .into(),
                    );
                }
                if exp == Experiment::SectorSup && p == 2.0 {
                    return fail(
                        "p = 2 gives a degenerate sector; list angles under phi instead".into(),
                    );
                }
            }
        }
        if exp == Experiment::SectorSup {
            if self
                .phi
                .iter()
                .any(|&a| !(a > 0.0 && a <= std::f64::consts::FRAC_PI_2))
            {
                return fail("sector angles must lie in (0, pi/2]".into());
            }
            if self.angular < 2 || self.radial < 2 {
                return fail("sector grids need at least 2 points per direction".into());
            }
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return fail(format!("sigma = {} must be positive", self.sigma));
        }
        if exp == Experiment::EpsLimit && self.epsilons.is_empty() {
            return fail("empty epsilon list".into());
        }
        if self.epsilons.iter().any(|&e| !(e >= 0.0 && e.is_finite())) {
            return fail("epsilons must be finite and non-negative".into());
        }
        if exp == Experiment::Contraction && self.times.is_empty() {
            return fail("empty t list".into());
        }
        if self.times.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
            return fail("times must be finite and non-negative".into());
        }
        if self.restarts == 0 || self.maxiter == 0 || self.samples == 0 {
            return fail("restarts, maxiter and samples must be positive".into());
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return fail(format!("tol = {} outside (0, 1)", self.tol));
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn bad(entry: &Entry, msg: impl Into<String>) -> CliError {
    CliError::Config {
        line: entry.line,
        msg: format!("{}: {}", entry.key, msg.into()),
    }
}

fn parse_scalar<V: FromStr>(entry: &Entry) -> Result<V, CliError>
where
    V::Err: fmt::Display,
{
    entry
        .value
        .parse()
        .map_err(|e: V::Err| bad(entry, e.to_string()))
}

fn parse_list<V: FromStr>(entry: &Entry) -> Result<Vec<V>, CliError>
where
    V::Err: fmt::Display,
{
    entry
        .value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e: V::Err| bad(entry, format!("`{s}`: {e}")))
        })
        .collect()
}

fn parse_reals(entry: &Entry) -> Result<Vec<f64>, CliError> {
    entry
        .value
        .split(',')
        .map(|s| parse_real(s).map_err(|m| bad(entry, m)))
        .collect()
}

fn parse_dims(entry: &Entry) -> Result<Vec<usize>, CliError> {
    let mut dims = Vec::new();
    for item in entry.value.split(',') {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: usize = lo
                .trim()
                .parse()
                .map_err(|_| bad(entry, format!("bad range `{item}`")))?;
            let hi: usize = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad(entry, format!("bad range `{item}`")))?;
            if lo > hi {
                return Err(bad(entry, format!("empty range `{item}`")));
            }
            dims.extend(lo..=hi);
        } else {
            dims.push(
                item.parse()
                    .map_err(|_| bad(entry, format!("bad dimension `{item}`")))?,
            );
        }
    }
    Ok(dims)
}

/// Parses `inf`, `a/b`, `pi`, `pi/b` and ordinary decimals.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let atom = |t: &str| -> Result<f64, String> {
        match t.trim() {
            "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
            "pi" | "π" => Ok(std::f64::consts::PI),
            other => other
                .parse::<f64>()
                .map_err(|_| format!("`{s}` is not a number")),
        }
    };
    let value = match s.split_once('/') {
        Some((num, den)) => atom(num)? / atom(den)?,
        None => atom(s)?,
    };
    if value.is_nan() {
        return Err(format!("`{s}` is not a number"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(parse_real("4/3").unwrap(), 4.0 / 3.0);
        assert_eq!(parse_real(" inf ").unwrap(), f64::INFINITY);
        assert_eq!(parse_real("pi/4").unwrap(), std::f64::consts::FRAC_PI_4);
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
        assert!(parse_real("nan").is_err());
        assert!(parse_real("0/0").is_err());
        assert!(parse_real("two").is_err());
    }

    #[test]
    fn layering_order() {
        let text = "seed = 7\nK = 3\nd = 1..3, 5\n[a]\nexperiment = dimscan\np = 4/3, 4\n[b]\nexperiment = contraction\nK = 4\n";
        let cfg = RunConfig::build(Some(text), &[Entry::parse_override("k=8").unwrap()]).unwrap();
        assert_eq!(cfg.blocks.len(), 2);
        assert_eq!(cfg.blocks[0].dims, vec![1, 2, 3, 5]);
        assert_eq!(cfg.blocks[0].k, 8);
        assert_eq!(cfg.blocks[1].k, 8);
        assert_eq!(cfg.blocks[0].seed, 7);
        assert_eq!(cfg.blocks[0].p_list, vec![4.0 / 3.0, 4.0]);
        assert_eq!(cfg.blocks[1].experiment, Some(Experiment::Contraction));
        let cfg = RunConfig::build(Some(text), &[]).unwrap();
        assert_eq!(cfg.blocks[1].k, 4);
        assert_eq!(cfg.blocks[0].k, 3);
    }

    #[test]
    fn run_keys_stay_global() {
        let err = RunConfig::build(Some("[a]\nout = x.csv\n"), &[]).unwrap_err();
        assert!(matches!(err, CliError::Config { line: 2, .. }));
        let cfg = RunConfig::build(Some("out = x.csv\njobs = 3\n"), &[]).unwrap();
        assert_eq!(cfg.options.jobs, Some(3));
    }

    #[test]
    fn validation_catches_caps_before_allocation() {
        let mut cfg = ExperimentConfig {
            experiment: Some(Experiment::Dimscan),
            k: 1000,
            dims: vec![9],
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        cfg.mem_cap = usize::MAX;
        // 1000^9 overflows nothing in u128 but is still above usize::MAX on 64-bit
        assert!(cfg.validate().is_err());
        cfg.dims = vec![2];
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn validation_rules() {
        let base = ExperimentConfig {
            experiment: Some(Experiment::Dimscan),
            ..Default::default()
        };
        assert!(base.validate().is_ok());
        let check = |f: &dyn Fn(&mut ExperimentConfig)| {
            let mut c = base.clone();
            f(&mut c);
            c.validate()
        };
        assert!(check(&|c| c.experiment = None).is_err());
        assert!(check(&|c| c.dims.clear()).is_err());
        assert!(check(&|c| c.p_list = vec![0.5]).is_err());
        assert!(check(&|c| c.p_list = vec![1.0, f64::INFINITY]).is_ok());
        assert!(check(&|c| c.g0 = 2).is_err());
        assert!(check(&|c| {
            c.k = 5;
            c.g0 = 2
        })
        .is_ok());
        assert!(check(&|c| c.setting = Setting::Hermite).is_ok());
        assert!(check(&|c| {
            c.setting = Setting::Hermite;
            c.p_list = vec![3.0]
        })
        .is_err());
        assert!(check(&|c| c.experiment = Some(Experiment::SquareFunction)).is_ok());
        assert!(check(&|c| {
            c.experiment = Some(Experiment::SquareFunction);
            c.p_list = vec![1.0]
        })
        .is_err());
        assert!(check(&|c| c.experiment = Some(Experiment::HermiteCheck)).is_err());
        assert!(check(&|c| c.experiment = Some(Experiment::SectorSup)).is_err());
        assert!(check(&|c| {
            c.experiment = Some(Experiment::SectorSup);
            c.phi = vec![0.5]
        })
        .is_ok());
    }
}
