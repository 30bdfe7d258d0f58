//! The Ornstein–Uhlenbeck system on truncated Hermite expansions.
//!
//! Functions on `(R^d, e^{-|x|²} dx)` are represented by their coefficients
//! against the normalized Hermite products `H̃_k = H̃_{k_1} ⊗ ⋯ ⊗ H̃_{k_d}`,
//! `k ∈ {0, …, N}^d`. The one-dimensional OU operator `L_r` has eigenvalue
//! `2k_r` on `H̃_k` and `δ_r = ∂_r` lowers the `r`-th degree:
//! `δ_r H̃_k = √(2k_r) H̃_{k−e_r}`. Neither operation raises a degree, so the
//! Riesz transforms below act exactly on the truncation.
//!
//! `L^p` norms against the Gaussian weight are evaluated with tensor
//! Gauss–Hermite quadrature.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::index;
use crate::scalar::Real;
use crate::spectral::{apply_diagonal, JointMultiplier, ProductSpectrum};

/// Default cap on coefficients `(N+1)^d` and quadrature nodes `n^d`.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 24;

/// Index set `{0, …, N}^d`. Quadrature-based norms are intended for `d ≤ 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HermiteTruncation {
    d: usize,
    n: usize,
}

impl HermiteTruncation {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        Self::with_cap(d, n, DEFAULT_MEMORY_CAP)
    }

    pub fn with_cap(d: usize, n: usize, cap: usize) -> Result<Self> {
        if d < 1 || n < 1 {
            return Err(Error::InvalidParameter(format!(
                "truncation needs d >= 1 and N >= 1, got d = {d}, N = {n}"
            )));
        }
        let points = index::checked_volume(&vec![n + 1; d]).unwrap_or(u128::MAX);
        if points > cap as u128 {
            return Err(Error::MemoryCap { points, cap });
        }
        Ok(Self { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Maximum degree per coordinate.
    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        (self.n + 1).pow(self.d as u32)
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.n + 1; self.d]
    }

    /// Joint spectrum of `(L_1, …, L_d)`: `{0, 2, …, 2N}` on each axis.
    pub fn spectrum<T: Real>(&self) -> ProductSpectrum<T> {
        let axis = (0..=self.n).map(|k| T::from_count(2 * k)).collect();
        ProductSpectrum::repeated(axis, self.d).expect("OU eigenvalues are non-negative")
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis < self.d {
            Ok(())
        } else {
            Err(Error::Axis { axis, dim: self.d })
        }
    }
}

/// Hermite coefficients, row-major over `{0, …, N}^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTensor<T> {
    trunc: HermiteTruncation,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> CoeffTensor<T> {
    pub fn new(trunc: HermiteTruncation, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != trunc.size() {
            return Err(Error::Shape {
                expected: trunc.size(),
                got: coeffs.len(),
            });
        }
        Ok(Self { trunc, coeffs })
    }

    pub fn zeros(trunc: HermiteTruncation) -> Self {
        Self {
            trunc,
            coeffs: vec![Complex::new(T::zero(), T::zero()); trunc.size()],
        }
    }

    /// Coefficient vector of `H̃_k`.
    pub fn basis(trunc: HermiteTruncation, k: &[usize]) -> Result<Self> {
        if k.len() != trunc.d || k.iter().any(|&ki| ki > trunc.n) {
            return Err(Error::InvalidParameter(format!(
                "multi-index {k:?} outside the truncation"
            )));
        }
        let mut c = Self::zeros(trunc);
        c.coeffs[index::ravel(k, &trunc.shape())] = Complex::new(T::one(), T::zero());
        Ok(c)
    }

    pub fn random<R: Rng + ?Sized>(trunc: HermiteTruncation, rng: &mut R) -> Self {
        let coeffs = (0..trunc.size())
            .map(|_| {
                Complex::new(
                    T::lit(rng.gen_range(-1.0..1.0)),
                    T::lit(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        Self { trunc, coeffs }
    }

    pub fn truncation(&self) -> HermiteTruncation {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn get(&self, k: &[usize]) -> Complex<T> {
        self.coeffs[index::ravel(k, &self.trunc.shape())]
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a * b.conj()
            })
    }

    /// Coefficient `ℓ²` norm, equal to `‖f‖_{L²(γ)}` by orthonormality.
    pub fn norm2(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn distance2(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(T::zero(), |acc, (a, b)| acc + (a - b).norm_sqr())
            .sqrt()
    }

    /// Fills each coefficient from its multi-index and the input tensor.
    fn remap(&self, mut f: impl FnMut(&[usize]) -> Complex<T>) -> Self {
        let shape = self.trunc.shape();
        let mut m = vec![0; self.trunc.d];
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        loop {
            coeffs.push(f(&m));
            if !index::advance(&mut m, &shape) {
                break;
            }
        }
        Self {
            trunc: self.trunc,
            coeffs,
        }
    }
}

/// `m(L_1, …, L_d)`: scales the coefficient at `k` by `m(2k_1, …, 2k_d)`,
/// using the multiplier's zero value at `k = 0`.
pub fn apply_ou_multiplier<T: Real>(m: &JointMultiplier<T>, c: &CoeffTensor<T>) -> CoeffTensor<T> {
    let coeffs =
        apply_diagonal(m, &c.trunc.spectrum(), &c.coeffs).expect("tensor matches its truncation");
    CoeffTensor {
        trunc: c.trunc,
        coeffs,
    }
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `δ_r`: output at `m` is `√(2(m_r+1)) c[m + e_r]`, zero when `m_r = N`.
pub fn apply_delta<T: Real>(c: &CoeffTensor<T>, axis: usize) -> Result<CoeffTensor<T>> {
    c.trunc.check_axis(axis)?;
    let n = c.trunc.n;
    let stride = index::strides(&c.trunc.shape())[axis];
    let two = T::lit(2.0);
    let shape = c.trunc.shape();
    Ok(c.remap(|m| {
        if m[axis] == n {
            return zero();
        }
        let from = index::ravel(m, &shape) + stride;
        c.coeffs[from] * (two * T::from_count(m[axis] + 1)).sqrt()
    }))
}

/// `δ_r*`: output at `m` is `√(2m_r) c[m − e_r]`. Adjoint of [`apply_delta`]
/// on the truncation.
pub fn apply_delta_adjoint<T: Real>(c: &CoeffTensor<T>, axis: usize) -> Result<CoeffTensor<T>> {
    c.trunc.check_axis(axis)?;
    let stride = index::strides(&c.trunc.shape())[axis];
    let two = T::lit(2.0);
    let shape = c.trunc.shape();
    Ok(c.remap(|m| {
        if m[axis] == 0 {
            return zero();
        }
        let from = index::ravel(m, &shape) - stride;
        c.coeffs[from] * (two * T::from_count(m[axis])).sqrt()
    }))
}

/// `R_r = δ_r (L_1 + ⋯ + L_d)^{-1/2} Π₀`: output at `m` is
/// `√(2(m_r+1)) / √(2(|m|+1)) · c[m + e_r]`.
pub fn apply_riesz_hermite<T: Real>(c: &CoeffTensor<T>, axis: usize) -> Result<CoeffTensor<T>> {
    c.trunc.check_axis(axis)?;
    let n = c.trunc.n;
    let stride = index::strides(&c.trunc.shape())[axis];
    let two = T::lit(2.0);
    let shape = c.trunc.shape();
    Ok(c.remap(|m| {
        if m[axis] == n {
            return zero();
        }
        let degree: usize = m.iter().sum();
        let from = index::ravel(m, &shape) + stride;
        let w =
            (two * T::from_count(m[axis] + 1)).sqrt() / (two * T::from_count(degree + 1)).sqrt();
        c.coeffs[from] * w
    }))
}

/// `L_r^{σ}(L_1 + ⋯ + L_d)^{-σ}`-type factor with the `ε`-shifted system
/// `(L_1 + ε, …, L_d + ε)`, composed with `Π_{0,r}`.
pub fn joint_factor_hermite<T: Real>(
    c: &CoeffTensor<T>,
    axis: usize,
    sigma: T,
    epsilon: T,
) -> Result<CoeffTensor<T>> {
    let m = JointMultiplier::axis_ratio(axis, c.trunc.d, sigma, epsilon)?;
    Ok(apply_ou_multiplier(&m, c))
}

/// One-dimensional Riesz transform `δ_r L_r^{-1/2} Π_{0,r}` acting on axis `r`.
pub fn apply_one_dim_riesz_hermite<T: Real>(
    c: &CoeffTensor<T>,
    axis: usize,
) -> Result<CoeffTensor<T>> {
    c.trunc.check_axis(axis)?;
    let inv_sqrt = JointMultiplier::new(move |l: &[T]| {
        if l[axis].is_zero() {
            zero()
        } else {
            Complex::new(l[axis].sqrt().recip(), T::zero())
        }
    });
    apply_delta(&apply_ou_multiplier(&inv_sqrt, c), axis)
}

/// `R_r` through the factorization
/// `(δ_r L_r^{-1/2} Π_{0,r}) ∘ (L_r^{1/2}(L_1 + ⋯ + L_d)^{-1/2} Π_{0,r})`.
pub fn apply_riesz_hermite_factored<T: Real>(
    c: &CoeffTensor<T>,
    axis: usize,
) -> Result<CoeffTensor<T>> {
    let factor = joint_factor_hermite(c, axis, T::lit(0.5), T::zero())?;
    apply_one_dim_riesz_hermite(&factor, axis)
}

/// Exact coefficient-space `‖R_r‖_{2→2}`.
///
/// `R_r` sends distinct basis vectors to distinct basis vectors, so its norm
/// is the largest weight `√(k_r / |k|)` over `k_r ≥ 1`.
pub fn riesz_hermite_l2_norm<T: Real>(trunc: HermiteTruncation, axis: usize) -> Result<T> {
    trunc.check_axis(axis)?;
    let shape = trunc.shape();
    let mut k = vec![0; trunc.d];
    let two = T::lit(2.0);
    let mut best = T::zero();
    loop {
        if k[axis] >= 1 {
            let degree: usize = k.iter().sum();
            let w = (two * T::from_count(k[axis])).sqrt() / (two * T::from_count(degree)).sqrt();
            best = best.max(w);
        }
        if !index::advance(&mut k, &shape) {
            return Ok(best);
        }
    }
}

/// `H̃_0(x), …, H̃_{n_max}(x)`, orthonormal for the weight `e^{-x²}`.
pub fn hermite_values<T: Real>(x: T, n_max: usize) -> Vec<T> {
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(T::PI().powf(T::lit(-0.25)));
    if n_max >= 1 {
        h.push(x * T::lit(2.0).sqrt() * h[0]);
    }
    for k in 1..n_max {
        let kf = T::from_count(k);
        let k1 = T::from_count(k + 1);
        let next = x * (T::lit(2.0) / k1).sqrt() * h[k] - (kf / k1).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

/// `n`-point Gauss–Hermite rule for `∫ f(x) e^{-x²} dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    /// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix with
    /// off-diagonal `√(k/2)`, weights `√π` times the squared first
    /// eigenvector components. Nodes and weights are symmetrized about 0.
    pub fn gauss_hermite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "quadrature needs at least one node".into(),
            ));
        }
        let mut diag = vec![T::zero(); n];
        let mut off = vec![T::zero(); n];
        for k in 1..n {
            off[k - 1] = (T::from_count(k) / T::lit(2.0)).sqrt();
        }
        let first = tridiagonal_ql(&mut diag, &mut off)?;
        let mut pairs: Vec<(T, T)> = diag
            .into_iter()
            .zip(first)
            .map(|(x, v)| (x, T::PI().sqrt() * v * v))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
        let half = T::lit(0.5);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n {
            let j = n - 1 - i;
            nodes[i] = (pairs[i].0 - pairs[j].0) * half;
            weights[i] = (pairs[i].1 + pairs[j].1) * half;
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix (`off[i]` couples `i`
/// and `i + 1`). Leaves eigenvalues in `diag` and returns the first component
/// of each normalized eigenvector.
fn tridiagonal_ql<T: Real>(diag: &mut [T], off: &mut [T]) -> Result<Vec<T>> {
    let n = diag.len();
    let mut first = vec![T::zero(); n];
    first[0] = T::one();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::Domain("tridiagonal QL failed to converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (two * off[l]);
            let mut r = g.hypot(T::one());
            g = diag[m] - diag[l] + off[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r.is_zero() {
                    diag[i + 1] -= p;
                    off[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + two * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let fz = first[i + 1];
                first[i + 1] = s * first[i] + c * fz;
                first[i] = c * first[i] - s * fz;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = T::zero();
        }
    }
    Ok(first)
}

/// Values of the expansion at the tensor quadrature nodes (row-major over
/// node indices), by contracting one axis at a time.
pub fn synthesize<T: Real>(
    c: &CoeffTensor<T>,
    rule: &QuadratureRule<T>,
) -> Result<Vec<Complex<T>>> {
    let trunc = c.trunc;
    let n_nodes = rule.len();
    let points = index::checked_volume(&vec![n_nodes; trunc.d]).unwrap_or(u128::MAX);
    if points > DEFAULT_MEMORY_CAP as u128 {
        return Err(Error::MemoryCap {
            points,
            cap: DEFAULT_MEMORY_CAP,
        });
    }
    let table: Vec<Vec<T>> = rule
        .nodes
        .iter()
        .map(|&x| hermite_values(x, trunc.n))
        .collect();
    let mut shape = trunc.shape();
    let mut data = c.coeffs.clone();
    for axis in 0..trunc.d {
        let inner: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let len = shape[axis];
        let mut next = vec![zero(); outer * n_nodes * inner];
        for o in 0..outer {
            for (j, row) in table.iter().enumerate() {
                for i in 0..inner {
                    let mut acc = zero();
                    for (k, &h) in row.iter().enumerate().take(len) {
                        acc += data[(o * len + k) * inner + i] * h;
                    }
                    next[(o * n_nodes + j) * inner + i] = acc;
                }
            }
        }
        shape[axis] = n_nodes;
        data = next;
    }
    Ok(data)
}

/// `‖f‖_{L^p(γ)}` with `γ = e^{-|x|²}`, by tensor Gauss–Hermite quadrature.
///
/// Requires `n ≥ 2N` nodes; `n ≥ 4N` is the recommended accuracy for `p ≠ 2`.
/// At `p = 2` the rule is exact once `n ≥ N + 1`. For `p = ∞` the maximum
/// over the nodes is returned.
pub fn quad_lp_norm<T: Real>(c: &CoeffTensor<T>, p: T, rule: &QuadratureRule<T>) -> Result<T> {
    if !(p >= T::one()) {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    if rule.len() < 2 * c.trunc.n {
        return Err(Error::InvalidParameter(format!(
            "{} nodes cannot resolve degree {}; need at least {}",
            rule.len(),
            c.trunc.n,
            2 * c.trunc.n
        )));
    }
    let values = synthesize(c, rule)?;
    let shape = vec![rule.len(); c.trunc.d];
    let mut node = vec![0; c.trunc.d];
    let max = values.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    if p.is_infinite() || max.is_zero() {
        return Ok(max);
    }
    let mut sum = T::zero();
    for v in &values {
        let w = node.iter().fold(T::one(), |acc, &j| acc * rule.weights[j]);
        sum += w * (v.norm() / max).powf(p);
        index::advance(&mut node, &shape);
    }
    Ok(max * sum.powf(p.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules_match_closed_forms() {
        // n = 2: nodes ±1/√2, weights √π/2
        let rule = QuadratureRule::<f64>::gauss_hermite(2).unwrap();
        assert!((rule.nodes()[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((rule.weights()[0] - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
        // n = 3: nodes 0, ±√(3/2); weights 2√π/3, √π/6
        let rule = QuadratureRule::<f64>::gauss_hermite(3).unwrap();
        assert_eq!(rule.nodes()[1], 0.0);
        assert!((rule.nodes()[2] - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((rule.weights()[1] - 2.0 * std::f64::consts::PI.sqrt() / 3.0).abs() < 1e-15);
        assert_eq!(
            QuadratureRule::<f64>::gauss_hermite(1).unwrap().nodes(),
            &[0.0]
        );
        assert!(QuadratureRule::<f64>::gauss_hermite(0).is_err());
    }

    #[test]
    fn hermite_values_low_degrees() {
        let x = 0.7f64;
        let h = hermite_values(x, 3);
        let c = std::f64::consts::PI.powf(-0.25);
        // H̃_k = H_k / √(2^k k!) · π^{-1/4} with physicists' H_k
        assert!((h[0] - c).abs() < 1e-16);
        assert!((h[1] - c * 2.0 * x / 2f64.sqrt()).abs() < 1e-15);
        assert!((h[2] - c * (4.0 * x * x - 2.0) / 8f64.sqrt()).abs() < 1e-15);
        assert!((h[3] - c * (8.0 * x * x * x - 12.0 * x) / 48f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn delta_on_basis_vectors() {
        let t = HermiteTruncation::new(2, 3).unwrap();
        let b0 = CoeffTensor::<f64>::basis(t, &[0, 0]).unwrap();
        assert!(apply_delta(&b0, 0).unwrap().norm2() == 0.0);
        let e1 = CoeffTensor::<f64>::basis(t, &[0, 1]).unwrap();
        let out = apply_delta(&e1, 1).unwrap();
        assert!((out.get(&[0, 0]).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((out.norm2() - 2f64.sqrt()).abs() < 1e-15);
        assert!(apply_delta(&e1, 2).is_err());
    }

    #[test]
    fn truncation_validation() {
        assert!(HermiteTruncation::new(0, 3).is_err());
        assert!(HermiteTruncation::new(2, 0).is_err());
        assert!(matches!(
            HermiteTruncation::with_cap(3, 9, 999),
            Err(Error::MemoryCap {
                points: 1000,
                cap: 999
            })
        ));
    }
}
