//! Row enumeration and execution.
//!
//! Every row keeps a witness (a grid function, a coefficient tensor or a
//! sector point) and `estimate_lower` is always [`evaluate`] applied to that
//! witness, so a stored witness reproduces the column exactly.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_core::group::CyclicSetting;
use riesz_core::hermite::{
    apply_delta, apply_delta_adjoint, apply_ou_multiplier, apply_riesz_hermite,
    apply_riesz_hermite_factored, joint_factor_hermite, quad_lp_norm, riesz_hermite_l2_norm,
};
use riesz_core::pnorm::{boyd_estimate, interp_upper, lp_norm};
use riesz_core::spectral::{eval_m_sigma, p_star, sector_sup};
use riesz_core::{
    BoydOptions, CoeffTensor, CyclicProductGroup, GridFunction, HermiteTruncation, JointMultiplier,
    QuadratureRule, SectorSpec, SymmetricMeasure, C64,
};
use serde::{Deserialize, Serialize};

use crate::config::{Experiment, ExperimentConfig, MeasureKind, Setting};
use crate::row::{Row, Status};

pub const FACTOR_TOL: f64 = 1e-12;
pub const CONTRACTION_SLACK: f64 = 1e-12;
pub const SERIES_TOL: f64 = 1e-10;
pub const SERIES_TERMS: usize = 60;
pub const SQUARE_SLACK: f64 = 1e-12;
pub const DDSTAR_TOL: f64 = 1e-13;
pub const DELTA_TOL: f64 = 1e-13;
pub const KERNEL_TOL: f64 = 1e-14;
/// Grids up to this size are probed with every basis vector.
pub const MAX_BASIS: usize = 4096;

/// Everything needed to rebuild the operator behind one row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSpec {
    pub experiment: Experiment,
    pub setting: Setting,
    pub k: usize,
    pub n: usize,
    pub d: usize,
    /// 0-based axis.
    pub r: Option<usize>,
    #[serde(with = "real_text")]
    pub p: Option<f64>,
    pub sigma: f64,
    pub epsilon: Option<f64>,
    pub t: Option<f64>,
    pub phi: Option<f64>,
    pub g0: usize,
    pub measure: MeasureKind,
    pub nodes: usize,
}

mod real_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::row::{format_real, parse_field};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&format_real(*x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        match text {
            None => Ok(None),
            Some(t) => parse_field(&t)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad real `{t}`"))),
        }
    }
}

/// Rows of one block in output order.
pub fn tasks(cfg: &ExperimentConfig) -> Vec<RowSpec> {
    let base = |d: usize| RowSpec {
        experiment: cfg.experiment(),
        setting: cfg.setting,
        k: cfg.k,
        n: cfg.n,
        d,
        r: None,
        p: None,
        sigma: cfg.sigma,
        epsilon: None,
        t: None,
        phi: None,
        g0: cfg.g0,
        measure: cfg.measure,
        nodes: cfg.quadrature_nodes(),
    };
    let mut out = Vec::new();
    match cfg.experiment() {
        Experiment::Dimscan | Experiment::HermiteCheck => {
            for &d in &cfg.dims {
                for r in cfg.axes_for(d) {
                    for &p in &cfg.p_list {
                        out.push(RowSpec {
                            r: Some(r),
                            p: Some(p),
                            ..base(d)
                        });
                    }
                }
            }
        }
        Experiment::FactorCheck => {
            for &d in &cfg.dims {
                for r in cfg.axes_for(d) {
                    out.push(RowSpec {
                        r: Some(r),
                        sigma: 0.5,
                        ..base(d)
                    });
                }
            }
        }
        Experiment::EpsLimit => {
            for &d in &cfg.dims {
                for r in cfg.axes_for(d) {
                    for &eps in &cfg.epsilons {
                        out.push(RowSpec {
                            r: Some(r),
                            epsilon: Some(eps),
                            ..base(d)
                        });
                    }
                }
            }
        }
        Experiment::Contraction => {
            for &d in &cfg.dims {
                for &p in &cfg.p_list {
                    for &t in &cfg.times {
                        out.push(RowSpec {
                            p: Some(p),
                            t: Some(t),
                            ..base(d)
                        });
                    }
                }
            }
        }
        Experiment::SquareFunction => {
            for &d in &cfg.dims {
                for &p in &cfg.p_list {
                    out.push(RowSpec {
                        p: Some(p),
                        ..base(d)
                    });
                }
            }
        }
        Experiment::DdstarCheck => out.extend(cfg.dims.iter().map(|&d| base(d))),
        Experiment::SectorSup => {
            if cfg.phi.is_empty() {
                for &p in &cfg.p_list {
                    let phi = p_star(p).expect("validated p");
                    out.push(RowSpec {
                        p: Some(p),
                        phi: Some(phi),
                        ..base(0)
                    });
                }
            } else {
                out.extend(cfg.phi.iter().map(|&phi| RowSpec {
                    phi: Some(phi),
                    ..base(0)
                }));
            }
        }
    }
    out
}

/// What an experiment hands back before it becomes a [`Row`].
#[derive(Debug, Clone)]
pub struct Outcome {
    pub lower: f64,
    pub upper: Option<f64>,
    pub aux: Option<f64>,
    pub method: &'static str,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub status: Status,
    pub witness: Vec<C64>,
}

impl Outcome {
    fn checked(lower: f64, witness: Vec<C64>, method: &'static str, ok: bool) -> Self {
        Outcome {
            lower,
            upper: None,
            aux: None,
            method,
            iterations: None,
            converged: true,
            status: if ok { Status::Ok } else { Status::Violated },
            witness,
        }
    }
}

/// Runs one row; errors land in the status column.
pub fn execute(spec: &RowSpec, cfg: &ExperimentConfig) -> (Row, Option<Vec<C64>>) {
    let start = Instant::now();
    let result = run_spec(spec, cfg);
    let runtime_ms = start.elapsed().as_millis();
    let cyclic = spec.setting == Setting::Cyclic;
    let sector = spec.experiment == Experiment::SectorSup;
    let mut row = Row {
        experiment: spec.experiment,
        setting: spec.setting,
        k: (cyclic && !sector).then_some(spec.k),
        d: (!sector).then_some(spec.d),
        n: (!cyclic && !sector).then_some(spec.n),
        p: spec.p,
        r: spec.r.map(|r| r + 1),
        sigma: matches!(
            spec.experiment,
            Experiment::FactorCheck | Experiment::EpsLimit | Experiment::SectorSup
        )
        .then_some(spec.sigma),
        epsilon: spec.epsilon,
        t: spec.t,
        lower: None,
        upper: None,
        aux: None,
        method: String::new(),
        iterations: None,
        converged: false,
        seed: cfg.seed,
        status: Status::Ok,
        runtime_ms,
        digest: String::new(),
    };
    match result {
        Ok(o) => {
            let finite = o.lower.is_finite()
                && o.upper.is_none_or(f64::is_finite)
                && o.aux.is_none_or(f64::is_finite);
            row.lower = Some(o.lower);
            row.upper = o.upper;
            row.aux = o.aux;
            row.method = o.method.to_string();
            row.iterations = o.iterations;
            row.converged = o.converged;
            row.status = if finite {
                o.status
            } else {
                Status::Error("non-finite estimate".into())
            };
            row.digest = crate::row::digest(&o.witness);
            (row, Some(o.witness))
        }
        Err(e) => {
            row.status = Status::Error(e.to_string());
            (row, None)
        }
    }
}

type CoreResult<T> = riesz_core::Result<T>;

fn cyclic_setting(spec: &RowSpec, cap: usize) -> CoreResult<CyclicSetting<f64>> {
    let group = CyclicProductGroup::with_cap(spec.k, spec.d, cap)?;
    let measure = match spec.measure {
        MeasureKind::Walk => SymmetricMeasure::walk(spec.k, spec.g0)?,
        MeasureKind::Lazy => SymmetricMeasure::lazy(spec.k)?,
    };
    CyclicSetting::new(group, measure, spec.g0)
}

fn truncation(spec: &RowSpec, cap: usize) -> CoreResult<HermiteTruncation> {
    HermiteTruncation::with_cap(spec.d, spec.n, cap)
}

fn axis(spec: &RowSpec) -> usize {
    spec.r.expect("row has an axis")
}

fn p_of(spec: &RowSpec) -> f64 {
    spec.p.expect("row has p")
}

fn ratio(num: &[C64], den: &[C64], p: f64) -> CoreResult<f64> {
    Ok(lp_norm(num, p)? / lp_norm(den, p)?)
}

fn max_abs(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Recomputes `estimate_lower` from a witness.
pub fn evaluate(spec: &RowSpec, witness: &[C64], cap: usize) -> CoreResult<f64> {
    if spec.experiment == Experiment::SectorSup {
        if witness.len() != 2 {
            return Err(riesz_core::Error::Shape {
                expected: 2,
                got: witness.len(),
            });
        }
        return Ok(eval_m_sigma(witness[0], witness[1], spec.sigma)?.norm());
    }
    match spec.setting {
        Setting::Cyclic => {
            let s = cyclic_setting(spec, cap)?;
            let f = GridFunction::new(s.group(), witness.to_vec())?;
            evaluate_cyclic(spec, &s, &f)
        }
        Setting::Hermite => {
            let c = CoeffTensor::new(truncation(spec, cap)?, witness.to_vec())?;
            evaluate_hermite(spec, &c)
        }
    }
}

fn evaluate_cyclic(spec: &RowSpec, s: &CyclicSetting<f64>, f: &GridFunction) -> CoreResult<f64> {
    match spec.experiment {
        Experiment::Dimscan => ratio(s.riesz(f, axis(spec))?.values(), f.values(), p_of(spec)),
        Experiment::FactorCheck => {
            let r = axis(spec);
            let diff = &s.riesz(f, r)? - &s.riesz_factored(f, r)?;
            ratio(diff.values(), f.values(), 2.0)
        }
        Experiment::Contraction => ratio(
            s.heat_all(spec.t.unwrap_or(0.0), f)?.values(),
            f.values(),
            p_of(spec),
        ),
        Experiment::EpsLimit => {
            let r = axis(spec);
            let eps = spec.epsilon.unwrap_or(0.0);
            let diff =
                &s.joint_factor(f, r, spec.sigma, eps)? - &s.joint_factor(f, r, spec.sigma, 0.0)?;
            ratio(diff.values(), f.values(), 2.0)
        }
        Experiment::SquareFunction => ratio(s.square_function(f)?.values(), f.values(), p_of(spec)),
        Experiment::DdstarCheck => {
            let mut dev: f64 = 0.0;
            for r in 0..spec.d {
                let expected = (f - &s.apply_p_direct(f, r)?).scale(C64::new(2.0, 0.0));
                let dds = s.apply_partial(&s.apply_partial_adjoint(f, r)?, r)?;
                let dsd = s.apply_partial_adjoint(&s.apply_partial(f, r)?, r)?;
                dev = dev
                    .max(max_abs((&dds - &expected).values()))
                    .max(max_abs((&dsd - &expected).values()));
            }
            Ok(dev / max_abs(f.values()))
        }
        Experiment::SectorSup | Experiment::HermiteCheck => {
            unreachable!("not a cyclic grid experiment")
        }
    }
}

fn evaluate_hermite(spec: &RowSpec, c: &CoeffTensor) -> CoreResult<f64> {
    match spec.experiment {
        Experiment::Dimscan => Ok(apply_riesz_hermite(c, axis(spec))?.norm2() / c.norm2()),
        Experiment::HermiteCheck => {
            let p = p_of(spec);
            let rc = apply_riesz_hermite(c, axis(spec))?;
            if p == 2.0 {
                Ok(rc.norm2() / c.norm2())
            } else {
                let rule = QuadratureRule::gauss_hermite(spec.nodes)?;
                Ok(quad_lp_norm(&rc, p, &rule)? / quad_lp_norm(c, p, &rule)?)
            }
        }
        Experiment::FactorCheck => {
            let r = axis(spec);
            Ok(
                apply_riesz_hermite(c, r)?.distance2(&apply_riesz_hermite_factored(c, r)?)
                    / c.norm2(),
            )
        }
        Experiment::EpsLimit => {
            let r = axis(spec);
            let eps = spec.epsilon.unwrap_or(0.0);
            let limit = joint_factor_hermite(c, r, spec.sigma, 0.0)?;
            Ok(joint_factor_hermite(c, r, spec.sigma, eps)?.distance2(&limit) / c.norm2())
        }
        _ => unreachable!("not a Hermite experiment"),
    }
}

/// Largest value of `eval` over `samples` seeded draws, with its argument.
fn worst<F, E>(samples: usize, seed: u64, mut draw: F, mut eval: E) -> CoreResult<(f64, Vec<C64>)>
where
    F: FnMut(&mut ChaCha8Rng) -> Vec<C64>,
    E: FnMut(&[C64]) -> CoreResult<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for _ in 0..samples {
        let w = draw(&mut rng);
        let v = eval(&w)?;
        if v > best.0 {
            best = (v, w);
        }
    }
    Ok(best)
}

fn run_spec(spec: &RowSpec, cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let cap = cfg.mem_cap;
    match (spec.experiment, spec.setting) {
        (Experiment::SectorSup, _) => {
            let phi = spec.phi.expect("sector row has an angle");
            let grid = SectorSpec::new([phi, phi], cfg.angular, cfg.radial)?;
            let sup = sector_sup(spec.sigma, &grid)?;
            let witness = sup.argmax.to_vec();
            let mut o = Outcome::checked(evaluate(spec, &witness, cap)?, witness, "grid", true);
            o.aux = Some(phi);
            Ok(o)
        }
        (Experiment::Dimscan, Setting::Cyclic) => dimscan_cyclic(spec, cfg),
        (Experiment::Dimscan, Setting::Hermite) => {
            let trunc = truncation(spec, cap)?;
            let r = axis(spec);
            let mut k = vec![0; spec.d];
            k[r] = 1;
            let witness = CoeffTensor::basis(trunc, &k)?.coeffs().to_vec();
            let mut o = Outcome::checked(evaluate(spec, &witness, cap)?, witness, "exact-2", true);
            o.upper = Some(riesz_hermite_l2_norm::<f64>(trunc, r)?.max(o.lower));
            Ok(o)
        }
        (Experiment::HermiteCheck, _) => hermite_check(spec, cfg),
        (Experiment::FactorCheck | Experiment::EpsLimit, Setting::Hermite) => {
            let trunc = truncation(spec, cap)?;
            let samples = if spec.experiment == Experiment::EpsLimit {
                1
            } else {
                cfg.samples
            };
            let (lower, witness) = worst(
                samples,
                cfg.seed,
                |rng| CoeffTensor::random(trunc, rng).coeffs().to_vec(),
                |w| evaluate(spec, w, cap),
            )?;
            let ok = spec.experiment == Experiment::EpsLimit || lower <= FACTOR_TOL;
            Ok(Outcome::checked(lower, witness, "identity", ok))
        }
        (Experiment::DdstarCheck, _) => ddstar(spec, cfg),
        _ => sampled_cyclic(spec, cfg),
    }
}

fn random_grid(s: &CyclicSetting<f64>) -> impl FnMut(&mut ChaCha8Rng) -> Vec<C64> + '_ {
    move |rng| GridFunction::random(s.group(), rng).into_values()
}

fn sampled_cyclic(spec: &RowSpec, cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let s = cyclic_setting(spec, cfg.mem_cap)?;
    let eval = |w: &[C64]| evaluate_cyclic(spec, &s, &GridFunction::new(s.group(), w.to_vec())?);
    match spec.experiment {
        Experiment::FactorCheck => {
            let (lower, w) = worst(cfg.samples, cfg.seed, random_grid(&s), eval)?;
            Ok(Outcome::checked(lower, w, "identity", lower <= FACTOR_TOL))
        }
        Experiment::EpsLimit => {
            // one fixed function per seed, shared by every epsilon
            let (lower, w) = worst(1, cfg.seed, random_grid(&s), eval)?;
            Ok(Outcome::checked(lower, w, "identity", true))
        }
        Experiment::Contraction => {
            let (lower, w) = worst(cfg.samples, cfg.seed, random_grid(&s), eval)?;
            // series cross-check over the same draws
            let t = spec.t.unwrap_or(0.0);
            let axes: Vec<usize> = (0..spec.d).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut series_dev: f64 = 0.0;
            for _ in 0..cfg.samples {
                let f = GridFunction::random(s.group(), &mut rng);
                let diff = &s.heat_all(t, &f)? - &s.heat_series(t, &f, &axes, SERIES_TERMS)?;
                series_dev = series_dev.max(max_abs(diff.values()) / max_abs(f.values()));
            }
            let ok = lower <= 1.0 + CONTRACTION_SLACK && series_dev <= SERIES_TOL;
            let mut o = Outcome::checked(lower, w, "sampled", ok);
            o.aux = Some(series_dev);
            Ok(o)
        }
        Experiment::SquareFunction => {
            let p = p_of(spec);
            let (lower, w) = worst(cfg.samples, cfg.seed, random_grid(&s), eval)?;
            // l² over l^p (p ≥ 2) or l¹ over l^p (p < 2) bound on the same draws
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut slack = f64::NEG_INFINITY;
            for _ in 0..cfg.samples {
                let f = GridFunction::random(s.group(), &mut rng);
                let nf = lp_norm(f.values(), p)?;
                let lhs = lp_norm(s.square_function(&f)?.values(), p)?;
                let norms = (0..spec.d)
                    .map(|r| lp_norm(s.riesz(&f, r)?.values(), p))
                    .collect::<CoreResult<Vec<f64>>>()?;
                let rhs = if p >= 2.0 {
                    norms.iter().map(|n| n * n).sum::<f64>().sqrt()
                } else {
                    norms.iter().sum()
                };
                slack = slack.max((lhs - rhs) / nf);
            }
            let mut o = Outcome::checked(lower, w, "sampled", slack <= SQUARE_SLACK);
            o.aux = Some(slack);
            Ok(o)
        }
        _ => unreachable!("dispatched elsewhere"),
    }
}

/// Kernel `R_r δ₀` of the translation-invariant `R_r`; its `ℓ¹` norm is
/// both `‖R_r‖_{1→1}` and `‖R_r‖_{∞→∞}`.
fn riesz_kernel(s: &CyclicSetting<f64>, r: usize) -> CoreResult<Vec<C64>> {
    Ok(s.riesz(&GridFunction::basis(s.group(), 0), r)?
        .into_values())
}

fn dimscan_cyclic(spec: &RowSpec, cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let s = cyclic_setting(spec, cfg.mem_cap)?;
    let r = axis(spec);
    let p = p_of(spec);
    let (sup, xi) = s.riesz_multiplier_sup(r)?;
    let kernel = riesz_kernel(&s, r)?;
    let l1: f64 = kernel.iter().map(|z| z.norm()).sum();
    let aux = if p > 1.0 && p.is_finite() {
        Some(p_star(p)?)
    } else {
        None
    };
    let exact = |witness: Vec<C64>, upper: f64, method| -> CoreResult<Outcome> {
        let mut o = Outcome::checked(
            evaluate(spec, &witness, cfg.mem_cap)?,
            witness,
            method,
            true,
        );
        // both sides are exact up to rounding; keep the bracket ordered
        o.upper = Some(upper.max(o.lower));
        o.aux = aux;
        Ok(o)
    };
    if p == 2.0 {
        exact(
            GridFunction::plane_wave(s.group(), &xi).into_values(),
            sup,
            "exact-2",
        )
    } else if p == 1.0 {
        exact(
            GridFunction::basis(s.group(), 0).into_values(),
            l1,
            "exact-1",
        )
    } else if p.is_infinite() {
        // x(y) = sign of conj k(−y) puts the full ℓ¹ mass of the kernel at 0
        let shape = s.group().shape();
        let mut idx = vec![0; spec.d];
        let witness = (0..kernel.len())
            .map(|flat| {
                riesz_core::index::unravel(flat, &shape, &mut idx);
                let neg: Vec<usize> = idx.iter().map(|&i| (spec.k - i) % spec.k).collect();
                let z = kernel[riesz_core::index::ravel(&neg, &shape)];
                if z.norm() > 0.0 {
                    z.conj() / z.norm()
                } else {
                    C64::new(1.0, 0.0)
                }
            })
            .collect();
        exact(witness, l1, "exact-inf")
    } else {
        let op = s.riesz_operator(r)?;
        let opts = BoydOptions {
            restarts: cfg.restarts,
            seed: cfg.seed,
            tol: cfg.tol,
            maxiter: cfg.maxiter,
            real_starts: false,
        };
        let est = boyd_estimate(&op, p, &opts)?;
        let upper = if p < 2.0 {
            interp_upper(p, 1.0, l1, 2.0, sup)?
        } else {
            interp_upper(p, 2.0, sup, f64::INFINITY, l1)?
        };
        let lower = evaluate(spec, &est.witness, cfg.mem_cap)?;
        Ok(Outcome {
            lower,
            upper: Some(upper),
            aux,
            method: "boyd",
            iterations: Some(est.iterations),
            converged: est.converged,
            status: if est.converged {
                Status::Ok
            } else {
                Status::NotConverged
            },
            witness: est.witness,
        })
    }
}

fn hermite_check(spec: &RowSpec, cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let trunc = truncation(spec, cfg.mem_cap)?;
    let r = axis(spec);
    let p = p_of(spec);
    // δ_r*δ_r against the diagonal 2k_r
    let weight = JointMultiplier::new(move |lambda: &[f64]| C64::new(lambda[r], 0.0));
    let probes: Vec<CoeffTensor> = if trunc.size() <= MAX_BASIS {
        (0..trunc.size())
            .map(|i| {
                let mut c = vec![C64::new(0.0, 0.0); trunc.size()];
                c[i] = C64::new(1.0, 0.0);
                CoeffTensor::new(trunc, c)
            })
            .collect::<CoreResult<_>>()?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.samples)
            .map(|_| CoeffTensor::random(trunc, &mut rng))
            .collect()
    };
    let mut delta_dev: f64 = 0.0;
    for c in &probes {
        let dd = apply_delta_adjoint(&apply_delta(c, r)?, r)?;
        let expected = apply_ou_multiplier(&weight, c);
        let scale = max_abs(c.coeffs());
        let dev = dd
            .coeffs()
            .iter()
            .zip(expected.coeffs())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        delta_dev = delta_dev.max(dev / scale);
    }
    let mut o = if p == 2.0 {
        let mut k = vec![0; spec.d];
        k[r] = 1;
        let witness = CoeffTensor::basis(trunc, &k)?.coeffs().to_vec();
        let mut o = Outcome::checked(
            evaluate(spec, &witness, cfg.mem_cap)?,
            witness,
            "exact-2",
            true,
        );
        o.upper = Some(riesz_hermite_l2_norm::<f64>(trunc, r)?.max(o.lower));
        o
    } else {
        let (lower, w) = worst(
            cfg.samples,
            cfg.seed,
            |rng| CoeffTensor::random(trunc, rng).coeffs().to_vec(),
            |w| evaluate(spec, w, cfg.mem_cap),
        )?;
        Outcome::checked(lower, w, "quadrature", true)
    };
    o.aux = Some(delta_dev);
    if delta_dev > DELTA_TOL {
        o.status = Status::Violated;
    }
    Ok(o)
}

fn ddstar(spec: &RowSpec, cfg: &ExperimentConfig) -> CoreResult<Outcome> {
    let s = cyclic_setting(spec, cfg.mem_cap)?;
    let n = s.group().size();
    let eval = |w: &[C64]| evaluate_cyclic(spec, &s, &GridFunction::new(s.group(), w.to_vec())?);
    let (lower, w) = if n <= MAX_BASIS {
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for i in 0..n {
            let b = GridFunction::basis(s.group(), i).into_values();
            let v = eval(&b)?;
            if v > best.0 {
                best = (v, b);
            }
        }
        best
    } else {
        worst(cfg.samples, cfg.seed, random_grid(&s), eval)?
    };
    let kernel = s.kernel_dimension(KERNEL_TOL);
    let identity_ok = spec.measure != MeasureKind::Walk || lower <= DDSTAR_TOL;
    let mut o = Outcome::checked(lower, w, "identity", identity_ok && kernel == 1);
    o.aux = Some(kernel as f64);
    Ok(o)
}
