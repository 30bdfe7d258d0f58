//! Bracketing `ℓ^p → ℓ^p` operator norms of black-box linear maps.
//!
//! Lower bounds always come with the input vector (witness) that attains
//! them. Exact values are available for `p ∈ {1, 2, ∞}`; for other `p` the
//! nonlinear power iteration of Boyd gives a certified lower bound and
//! Riesz–Thorin interpolation between exact endpoints gives an upper bound.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A linear map `C^{dim_in} → C^{dim_out}` together with its adjoint.
pub trait LinearOperator<T: Real> {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>>;
    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>>;
}

impl<T: Real, O: LinearOperator<T> + ?Sized> LinearOperator<T> for &O {
    fn dim_in(&self) -> usize {
        (**self).dim_in()
    }
    fn dim_out(&self) -> usize {
        (**self).dim_out()
    }
    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        (**self).apply(x)
    }
    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        (**self).apply_adjoint(y)
    }
}

/// Operator given by a pair of closures.
pub struct FnOperator<F, G> {
    pub dim_in: usize,
    pub dim_out: usize,
    pub apply: F,
    pub adjoint: G,
}

impl<T, F, G> LinearOperator<T> for FnOperator<F, G>
where
    T: Real,
    F: Fn(&[Complex<T>]) -> Vec<Complex<T>>,
    G: Fn(&[Complex<T>]) -> Vec<Complex<T>>,
{
    fn dim_in(&self) -> usize {
        self.dim_in
    }
    fn dim_out(&self) -> usize {
        self.dim_out
    }
    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        (self.apply)(x)
    }
    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        (self.adjoint)(y)
    }
}

/// Explicit row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&a| Complex::new(a, T::zero())).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Complex::new(T::one(), T::zero()); n])
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let n = diag.len();
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for (i, &v) in diag.iter().enumerate() {
            data[i * n + i] = v;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Entries uniform in `[-1, 1)` (both parts unless `real`).
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, real: bool, rng: &mut R) -> Self {
        let data = (0..rows * cols)
            .map(|_| {
                let re = T::lit(rng.gen_range(-1.0..1.0));
                let im = if real {
                    T::zero()
                } else {
                    T::lit(rng.gen_range(-1.0..1.0))
                };
                Complex::new(re, im)
            })
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im.is_zero())
    }
}

impl<T: Real> LinearOperator<T> for DenseMatrix<T> {
    fn dim_in(&self) -> usize {
        self.cols
    }

    fn dim_out(&self) -> usize {
        self.rows
    }

    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        self.data
            .chunks(self.cols)
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                        acc + a * b
                    })
            })
            .collect()
    }

    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.cols];
        for (row, &yi) in self.data.chunks(self.cols).zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * yi;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact1,
    Exact2,
    ExactInf,
    Boyd,
    Brute,
    Interp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact1 => "exact-1",
            Method::Exact2 => "exact-2",
            Method::ExactInf => "exact-inf",
            Method::Boyd => "boyd",
            Method::Brute => "brute",
            Method::Interp => "interp",
        })
    }
}

/// A bracket `lower ≤ ‖A‖_{p→p} (≤ upper)`; `lower` is attained by `witness`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate<T> {
    pub p: T,
    pub lower: T,
    pub upper: Option<T>,
    pub method: Method,
    pub witness: Vec<Complex<T>>,
    pub iterations: usize,
    pub converged: bool,
}

impl<T: Real> NormEstimate<T> {
    /// `‖A w‖_p / ‖w‖_p` recomputed from the stored witness.
    pub fn witness_ratio<O: LinearOperator<T> + ?Sized>(&self, op: &O) -> T {
        ratio(op, &self.witness, self.p)
    }
}

fn check_p<T: Real>(p: T) -> Result<()> {
    if p >= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("p must lie in [1, inf], got {p}")))
    }
}

/// `(Σ m_i^p)^{1/p}` for moduli `m_i`, scaled by the max modulus and summed
/// with Neumaier compensation.
fn lp_of_moduli<T: Real>(moduli: impl Iterator<Item = T> + Clone, p: T) -> T {
    lp_of_pairs(moduli.map(|m| (m, T::zero())), p)
}

/// `ℓ^p` norm of the moduli `|a + ib|`, scaled by the largest component so
/// neither the squares nor the powers overflow. Works on squared moduli to
/// avoid a `hypot` per entry.
fn lp_of_pairs<T: Real>(pairs: impl Iterator<Item = (T, T)> + Clone, p: T) -> T {
    let scale = pairs
        .clone()
        .fold(T::zero(), |m, (a, b)| m.max(a.abs()).max(b.abs()));
    if scale.is_zero() || scale.is_infinite() {
        return scale;
    }
    let squared = pairs.map(move |(a, b)| {
        let (x, y) = (a / scale, b / scale);
        x * x + y * y
    });
    if p.is_infinite() {
        return scale * squared.fold(T::zero(), T::max).sqrt();
    }
    let half = p / T::lit(2.0);
    let even = half.fract().is_zero() && half <= T::lit(8.0);
    // q = |z/scale|², term = q^{p/2}
    let power = |q: T| {
        if p == T::lit(2.0) {
            q
        } else if p == T::one() {
            q.sqrt()
        } else if even {
            q.powi(half.to_i32().unwrap_or(1))
        } else {
            q.powf(half)
        }
    };
    let mut sum = T::zero();
    let mut comp = T::zero();
    for q in squared {
        let term = power(q);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    let total = sum + comp;
    if p == T::one() {
        scale * total
    } else if p == T::lit(2.0) {
        scale * total.sqrt()
    } else {
        scale * total.powf(p.recip())
    }
}

/// Counting-measure `ℓ^p` norm; `p = ∞` gives the max modulus.
pub fn lp_norm<T: Real>(f: &[Complex<T>], p: T) -> Result<T> {
    check_p(p)?;
    Ok(lp_of_pairs(f.iter().map(|z| (z.re, z.im)), p))
}

/// [`lp_norm`] for real vectors.
pub fn lp_norm_real<T: Real>(f: &[T], p: T) -> Result<T> {
    check_p(p)?;
    Ok(lp_of_moduli(f.iter().map(|x| x.abs()), p))
}

fn norm_unchecked<T: Real>(f: &[Complex<T>], p: T) -> T {
    lp_of_pairs(f.iter().map(|z| (z.re, z.im)), p)
}

fn ratio<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, x: &[Complex<T>], p: T) -> T {
    let nx = norm_unchecked(x, p);
    if nx.is_zero() {
        return T::zero();
    }
    norm_unchecked(&op.apply(x), p) / nx
}

/// `φ_q(v)_i = |v_i|^{q−1} v_i/|v_i|`, zero at zero entries.
fn duality_map<T: Real>(v: &[Complex<T>], q: T) -> Vec<Complex<T>> {
    let e = q - T::one();
    v.iter()
        .map(|&z| {
            let m = z.norm();
            if m.is_zero() {
                Complex::new(T::zero(), T::zero())
            } else {
                z * (m.powf(e) / m)
            }
        })
        .collect()
}

fn normalize<T: Real>(v: &mut [Complex<T>], p: T) -> bool {
    let n = norm_unchecked(v, p);
    if n.is_zero() || !n.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|z| *z /= n);
    true
}

fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x * y.conj()
        })
}

fn random_vector<T: Real, R: Rng + ?Sized>(n: usize, real: bool, rng: &mut R) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| {
            let re = T::lit(rng.gen_range(-1.0..1.0));
            let im = if real {
                T::zero()
            } else {
                T::lit(rng.gen_range(-1.0..1.0))
            };
            Complex::new(re, im)
        })
        .collect()
}

/// Which closed-form norm to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactNorm {
    One,
    Two,
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions<T> {
    pub tol: T,
    pub maxiter: usize,
    pub seed: u64,
}

impl<T: Real> Default for PowerOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-10),
            maxiter: 10_000,
            seed: 0,
        }
    }
}

/// `p = 1`: largest column `ℓ¹` norm. `p = ∞`: the same on the adjoint,
/// witnessed by the conjugate phases of the heaviest row. `p = 2`: power
/// iteration on `A*A`.
pub fn opnorm_exact<T, O>(
    op: &O,
    which: ExactNorm,
    opts: &PowerOptions<T>,
) -> Result<NormEstimate<T>>
where
    T: Real,
    O: LinearOperator<T> + ?Sized,
{
    match which {
        ExactNorm::One => {
            let n = op.dim_in();
            let mut best = (T::zero(), 0);
            let mut e = vec![Complex::new(T::zero(), T::zero()); n];
            for j in 0..n {
                e[j] = Complex::new(T::one(), T::zero());
                let col = norm_unchecked(&op.apply(&e), T::one());
                e[j] = Complex::new(T::zero(), T::zero());
                if col > best.0 {
                    best = (col, j);
                }
            }
            let mut witness = vec![Complex::new(T::zero(), T::zero()); n];
            if n > 0 {
                witness[best.1] = Complex::new(T::one(), T::zero());
            }
            Ok(NormEstimate {
                p: T::one(),
                lower: ratio(op, &witness, T::one()),
                upper: Some(best.0),
                method: Method::Exact1,
                witness,
                iterations: n,
                converged: true,
            })
        }
        ExactNorm::Inf => {
            let m = op.dim_out();
            let mut best = (T::zero(), Vec::new());
            let mut e = vec![Complex::new(T::zero(), T::zero()); m];
            for i in 0..m {
                e[i] = Complex::new(T::one(), T::zero());
                let row = op.apply_adjoint(&e);
                e[i] = Complex::new(T::zero(), T::zero());
                let sum = norm_unchecked(&row, T::one());
                if sum > best.0 || best.1.is_empty() {
                    best = (sum, row);
                }
            }
            // x_j = phase of conj(a_ij) makes (Ax)_i = Σ_j |a_ij|.
            let witness = duality_map(&best.1, T::one());
            let p = T::infinity();
            Ok(NormEstimate {
                p,
                lower: ratio(op, &witness, p),
                upper: Some(best.0),
                method: Method::ExactInf,
                witness,
                iterations: m,
                converged: true,
            })
        }
        ExactNorm::Two => power_iteration(op, opts),
    }
}

fn power_iteration<T, O>(op: &O, opts: &PowerOptions<T>) -> Result<NormEstimate<T>>
where
    T: Real,
    O: LinearOperator<T> + ?Sized,
{
    let two = T::lit(2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x = random_vector(op.dim_in(), false, &mut rng);
    if !normalize(&mut x, two) {
        return Err(Error::InvalidParameter(
            "operator has an empty domain".into(),
        ));
    }
    let mut sigma = T::zero();
    let mut last_delta = T::zero();
    let mut converged = false;
    let mut iterations = 0;
    let mut best = (T::zero(), x.clone());
    while iterations < opts.maxiter {
        iterations += 1;
        let y = op.apply(&x);
        let next = norm_unchecked(&y, two);
        if next > best.0 {
            best = (next, x.clone());
        }
        if next.is_zero() {
            converged = true;
            break;
        }
        let delta = (next - sigma).abs();
        sigma = next;
        // Geometric tail estimate from the contraction of successive changes.
        if iterations > 2 && delta <= opts.tol * sigma {
            let q = if last_delta > T::zero() {
                (delta / last_delta).min(T::lit(0.999_999))
            } else {
                T::zero()
            };
            if delta * q / (T::one() - q) <= opts.tol * sigma {
                converged = true;
                break;
            }
        }
        last_delta = delta;
        let mut z = op.apply_adjoint(&y);
        if !normalize(&mut z, two) {
            converged = true;
            break;
        }
        x = z;
    }
    let witness = best.1;
    let lower = ratio(op, &witness, two);
    Ok(NormEstimate {
        p: two,
        lower,
        upper: Some(lower * (T::one() + opts.tol)),
        method: Method::Exact2,
        witness,
        iterations,
        converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoydOptions<T> {
    pub restarts: usize,
    pub seed: u64,
    pub tol: T,
    pub maxiter: usize,
    /// Restrict random starts to real vectors (for real-input norms).
    pub real_starts: bool,
}

impl<T: Real> Default for BoydOptions<T> {
    fn default() -> Self {
        Self {
            restarts: 16,
            seed: 0x5eed,
            tol: T::lit(1e-9),
            maxiter: 1000,
            real_starts: false,
        }
    }
}

/// Trace of one Boyd run from a single start.
#[derive(Debug, Clone, PartialEq)]
pub struct BoydRun<T> {
    /// `‖A x_k‖_p` with `‖x_k‖_p = 1`, one entry per iteration.
    pub ratios: Vec<T>,
    pub best_ratio: T,
    pub best_x: Vec<Complex<T>>,
    pub converged: bool,
}

/// Boyd's iteration `x ← φ_{p'}(A* φ_p(A x))`, normalized in `ℓ^p`.
/// Converged once successive ratios agree to `tol` (relative) three times
/// in a row.
pub fn boyd_iterate<T, O>(
    op: &O,
    p: T,
    start: Vec<Complex<T>>,
    tol: T,
    maxiter: usize,
) -> BoydRun<T>
where
    T: Real,
    O: LinearOperator<T> + ?Sized,
{
    let dual = p / (p - T::one());
    let mut x = start;
    let mut run = BoydRun {
        ratios: Vec::new(),
        best_ratio: T::zero(),
        best_x: x.clone(),
        converged: false,
    };
    if !normalize(&mut x, p) {
        return run;
    }
    let mut streak = 0;
    let mut last_step = T::zero();
    for _ in 0..maxiter {
        let y = op.apply(&x);
        let r = norm_unchecked(&y, p);
        if let Some(&prev) = run.ratios.last() {
            // Steps shrinking by a factor rho leave about step / (1 - rho)
            // still to go; test that tail, not the step.
            let step = (r - prev).abs();
            let rho = if last_step > T::zero() {
                (step / last_step).min(T::lit(0.999))
            } else {
                T::zero()
            };
            streak = if step <= tol * r * (T::one() - rho) {
                streak + 1
            } else {
                0
            };
            last_step = step;
        }
        run.ratios.push(r);
        if r > run.best_ratio || run.ratios.len() == 1 {
            run.best_ratio = r;
            run.best_x = x.clone();
        }
        if streak >= 3 {
            run.converged = true;
            break;
        }
        let z = op.apply_adjoint(&duality_map(&y, p));
        let mut next = duality_map(&z, dual);
        if !normalize(&mut next, p) {
            // A x = 0 or A* vanishes on the dual vector: a fixed point.
            run.converged = true;
            break;
        }
        x = next;
    }
    run
}

/// Checks `⟨Ax, y⟩ = ⟨x, A*y⟩` on seeded random vectors.
pub fn validate_adjoint<T, O>(op: &O, seed: u64, tol: T) -> Result<()>
where
    T: Real,
    O: LinearOperator<T> + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_vector::<T, _>(op.dim_in(), false, &mut rng);
    let y = random_vector::<T, _>(op.dim_out(), false, &mut rng);
    let ax = op.apply(&x);
    let aty = op.apply_adjoint(&y);
    if ax.len() != y.len() || aty.len() != x.len() {
        return Err(Error::AdjointMismatch(f64::INFINITY));
    }
    let lhs = inner(&ax, &y);
    let rhs = inner(&x, &aty);
    let two = T::lit(2.0);
    let scale = norm_unchecked(&ax, two) * norm_unchecked(&y, two)
        + norm_unchecked(&x, two) * norm_unchecked(&aty, two);
    let defect = (lhs - rhs).norm();
    if defect > tol * scale.max(T::min_positive_value()) {
        return Err(Error::AdjointMismatch((defect / scale).to_f64_lossy()));
    }
    Ok(())
}

/// Best Boyd lower bound over `restarts` starts: restart 0 is the all-ones
/// vector, restart `i ≥ 1` a random vector from the stream seeded `seed + i`.
pub fn boyd_estimate<T, O>(op: &O, p: T, opts: &BoydOptions<T>) -> Result<NormEstimate<T>>
where
    T: Real,
    O: LinearOperator<T> + Sync + ?Sized,
{
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "Boyd iteration needs p in (1, inf), got {p}"
        )));
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter(
            "at least one restart is required".into(),
        ));
    }
    validate_adjoint(op, opts.seed ^ 0xad1, T::lit(1e-10))?;
    let n = op.dim_in();
    let runs: Vec<BoydRun<T>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let start = if i == 0 {
                vec![Complex::new(T::one(), T::zero()); n]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
                random_vector(n, opts.real_starts, &mut rng)
            };
            boyd_iterate(op, p, start, opts.tol, opts.maxiter)
        })
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.best_ratio > runs[best].best_ratio {
            best = i;
        }
    }
    let run = &runs[best];
    let witness = run.best_x.clone();
    Ok(NormEstimate {
        p,
        lower: ratio(op, &witness, p),
        upper: None,
        method: Method::Boyd,
        witness,
        iterations: run.ratios.len(),
        converged: run.converged,
    })
}

/// Grid search for the real-input norm of a real matrix with at most three
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteResult<T> {
    pub value: T,
    pub witness: Vec<T>,
    pub evaluations: usize,
}

/// Maximizes `‖A x‖_p / ‖x‖_p` over a `density`-per-angle grid of directions
/// in `R^n` (`n ≤ 3`), then refines the best cells by repeated halving of the
/// grid spacing until the spacing drops below `1e-13`.
pub fn brute_small<T: Real>(
    matrix: &DenseMatrix<T>,
    p: T,
    density: usize,
) -> Result<BruteResult<T>> {
    check_p(p)?;
    let n = matrix.cols();
    if n == 0 || n > 3 {
        return Err(Error::InvalidParameter(format!(
            "brute force needs 1..=3 columns, got {n}"
        )));
    }
    if !matrix.is_real() {
        return Err(Error::InvalidParameter(
            "brute force searches real inputs of real matrices".into(),
        ));
    }
    if density < 1000 {
        return Err(Error::InvalidParameter(format!(
            "grid density {density} below 1000"
        )));
    }
    let rows: Vec<Vec<T>> = (0..matrix.rows())
        .map(|i| (0..n).map(|j| matrix.get(i, j).re).collect())
        .collect();
    let mut evaluations = 0;
    let mut objective = |angles: &[T]| -> (T, Vec<T>) {
        evaluations += 1;
        let x = direction(n, angles);
        let ax: Vec<T> = rows
            .iter()
            .map(|r| r.iter().zip(&x).fold(T::zero(), |a, (u, v)| a + *u * *v))
            .collect();
        let nx = lp_of_moduli(x.iter().map(|v| v.abs()), p);
        (lp_of_moduli(ax.iter().map(|v| v.abs()), p) / nx, x)
    };
    if n == 1 {
        let (value, witness) = objective(&[]);
        return Ok(BruteResult {
            value,
            witness,
            evaluations: 1,
        });
    }
    let dims = n - 1;
    let pi = T::PI();
    let step = pi / T::from_count(density);
    // Global grid; keep the best few cells as refinement seeds.
    let mut seeds: Vec<(T, Vec<T>)> = Vec::new();
    let keep = 8;
    let total = density.pow(dims as u32);
    for flat in 0..total {
        let angles: Vec<T> = (0..dims)
            .map(|a| T::from_count((flat / density.pow(a as u32)) % density) * step)
            .collect();
        let (v, _) = objective(&angles);
        if seeds.len() < keep || v > seeds[keep - 1].0 {
            seeds.push((v, angles));
            seeds.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
            seeds.truncate(keep);
        }
    }
    let mut best = (T::neg_infinity(), Vec::new());
    for (mut value, mut centre) in seeds {
        let mut h = step;
        while h > T::lit(1e-13) {
            h /= T::lit(2.0);
            let offsets: Vec<i32> = (-2..=2).collect();
            let mut improved = (value, centre.clone());
            let stencil = offsets.len().pow(dims as u32);
            for s in 0..stencil {
                let angles: Vec<T> = (0..dims)
                    .map(|a| {
                        let o = offsets[(s / offsets.len().pow(a as u32)) % offsets.len()];
                        centre[a] + T::lit(o as f64) * h
                    })
                    .collect();
                let (v, _) = objective(&angles);
                if v > improved.0 {
                    improved = (v, angles);
                }
            }
            value = improved.0;
            centre = improved.1;
        }
        if value > best.0 {
            best = (value, centre);
        }
    }
    let (value, witness) = objective(&best.1);
    Ok(BruteResult {
        value,
        witness,
        evaluations,
    })
}

fn direction<T: Real>(n: usize, angles: &[T]) -> Vec<T> {
    match n {
        1 => vec![T::one()],
        2 => vec![angles[0].cos(), angles[0].sin()],
        _ => {
            let (theta, phi) = (angles[0], angles[1]);
            vec![
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]
        }
    }
}

/// Riesz–Thorin: `‖A‖_p ≤ b₀^{1−θ} b₁^θ` where `1/p = (1−θ)/p₀ + θ/p₁`.
pub fn interp_upper<T: Real>(p: T, p0: T, bound0: T, p1: T, bound1: T) -> Result<T> {
    for q in [p, p0, p1] {
        check_p(q)?;
    }
    if !(bound0 > T::zero() && bound1 > T::zero()) {
        return Err(Error::Domain(
            "interpolation bounds must be positive".into(),
        ));
    }
    let (lo, hi) = if p0 <= p1 { (p0, p1) } else { (p1, p0) };
    if p < lo || p > hi {
        return Err(Error::Domain(format!("p = {p} outside [{lo}, {hi}]")));
    }
    if p0 == p1 || p == p0 {
        return Ok(bound0);
    }
    if p == p1 {
        return Ok(bound1);
    }
    let (a, a0, a1) = (p.recip(), p0.recip(), p1.recip());
    let theta = (a - a0) / (a1 - a0);
    Ok(bound0.powf(T::one() - theta) * bound1.powf(theta))
}
