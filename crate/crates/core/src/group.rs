//! Riesz transforms on products of cyclic groups `(Z_K)^d`.
//!
//! Every operator here is translation invariant, so it is diagonalized by the
//! `d`-dimensional DFT. The random walk `P = P_μ` has the real symbol
//! `Σ_y μ(y) cos(2πξy/K)`, the Laplacian `L = I − P` has eigenvalues
//! `λ(ξ) = 1 − symbol(ξ)`, and `∂ f(x) = f(x + g₀) − f(x)` has symbol
//! `e^{2πi g₀ξ/K} − 1`. Operators with an obvious direct formula (walk,
//! differences, heat series, projections) are also implemented directly so
//! the two routes can check each other.

use std::ops::{Add, Sub};

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fft::GridFft;
use crate::index;
use crate::pnorm::LinearOperator;
use crate::scalar::Real;
use crate::spectral::{apply_diagonal_in_place, JointMultiplier, ProductSpectrum};

/// Default cap on grid points `K^d`.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 24;

/// `(Z_K)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicProductGroup {
    k: usize,
    d: usize,
}

impl CyclicProductGroup {
    pub fn new(k: usize, d: usize) -> Result<Self> {
        Self::with_cap(k, d, DEFAULT_MEMORY_CAP)
    }

    /// Rejects `K^d > cap` before anything is allocated.
    pub fn with_cap(k: usize, d: usize, cap: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "cycle length K = {k} must be >= 2"
            )));
        }
        if d < 1 {
            return Err(Error::InvalidParameter("dimension d must be >= 1".into()));
        }
        let points = index::checked_volume(&vec![k; d]).unwrap_or(u128::MAX);
        if points > cap as u128 {
            return Err(Error::MemoryCap { points, cap });
        }
        Ok(Self { k, d })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.k.pow(self.d as u32)
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.k; self.d]
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis < self.d {
            Ok(())
        } else {
            Err(Error::Axis { axis, dim: self.d })
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A symmetric probability measure on `Z_K` whose support generates `Z_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMeasure<T> {
    weights: Vec<T>,
}

impl<T: Real> SymmetricMeasure<T> {
    /// `weights[y]` is the mass at `y ∈ Z_K`; `K = weights.len()`.
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let k = weights.len();
        if k < 2 {
            return Err(Error::InvalidMeasure(format!("K = {k} must be >= 2")));
        }
        if let Some(w) = weights
            .iter()
            .find(|w| !(**w >= T::zero()) || !w.is_finite())
        {
            return Err(Error::InvalidMeasure(format!(
                "weight {w} is not a finite non-negative number"
            )));
        }
        let tol = T::lit(1e-15).max(T::epsilon() * T::lit(4.0));
        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        for y in 0..k {
            if (weights[y] - weights[(k - y) % k]).abs() > tol {
                return Err(Error::InvalidMeasure(format!(
                    "mass at {y} differs from mass at -{y}"
                )));
            }
        }
        let g = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .fold(k, |acc, (y, _)| gcd(acc, y));
        if g != 1 {
            return Err(Error::InvalidMeasure(format!(
                "support generates only the subgroup of index {g}"
            )));
        }
        Ok(Self { weights })
    }

    /// Builds from point masses; positions are taken mod `K` and accumulate.
    pub fn from_points(k: usize, points: &[(i64, T)]) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidMeasure(format!("K = {k} must be >= 2")));
        }
        let mut weights = vec![T::zero(); k];
        for &(y, w) in points {
            weights[y.rem_euclid(k as i64) as usize] += w;
        }
        Self::new(weights)
    }

    /// `μ_{g₀} = (δ_{g₀} + δ_{−g₀})/2`.
    pub fn walk(k: usize, g0: usize) -> Result<Self> {
        let half = T::lit(0.5);
        Self::from_points(k, &[(g0 as i64, half), (-(g0 as i64), half)])
    }

    /// `(δ₀ + δ₁ + δ₋₁)/3`.
    pub fn lazy(k: usize) -> Result<Self> {
        let third = T::one() / T::lit(3.0);
        Self::from_points(k, &[(0, third), (1, third), (-1, third)])
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(y, &w)| (y, w))
    }

    /// Whether this is exactly `μ_{g₀}`.
    pub fn is_walk_of(&self, g0: usize) -> bool {
        Self::walk(self.k(), g0).is_ok_and(|m| m == *self)
    }
}

/// Spectrum of `P_μ` and of `L = I − P_μ` on `Z_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpectrum<T> {
    symbol: Vec<T>,
    lambda: Vec<T>,
}

impl<T: Real> WalkSpectrum<T> {
    /// Uses `1 − cos 2a = 2 sin² a`, so `λ` is computed without cancellation
    /// and `λ[0] = 0`, `symbol[0] = 1` hold exactly.
    pub fn from_measure(mu: &SymmetricMeasure<T>) -> Self {
        let k = mu.k();
        let two = T::lit(2.0);
        let lambda: Vec<T> = (0..k)
            .map(|xi| {
                mu.support().fold(T::zero(), |acc, (y, w)| {
                    let m = (xi * y) % k;
                    let s = (T::PI() * T::from_count(m) / T::from_count(k)).sin();
                    acc + w * two * s * s
                })
            })
            .collect();
        let symbol = lambda.iter().map(|&l| T::one() - l).collect();
        Self { symbol, lambda }
    }

    pub fn symbol(&self) -> &[T] {
        &self.symbol
    }

    pub fn lambda(&self) -> &[T] {
        &self.lambda
    }
}

/// Complex function on `(Z_K)^d`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    group: CyclicProductGroup,
    values: Vec<Complex<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(group: CyclicProductGroup, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::Shape {
                expected: group.size(),
                got: values.len(),
            });
        }
        Ok(Self { group, values })
    }

    pub fn constant(group: CyclicProductGroup, c: Complex<T>) -> Self {
        Self {
            group,
            values: vec![c; group.size()],
        }
    }

    pub fn zeros(group: CyclicProductGroup) -> Self {
        Self::constant(group, Complex::new(T::zero(), T::zero()))
    }

    /// Indicator of the point with row-major index `flat`.
    pub fn basis(group: CyclicProductGroup, flat: usize) -> Self {
        let mut f = Self::zeros(group);
        f.values[flat] = Complex::new(T::one(), T::zero());
        f
    }

    pub fn from_fn(group: CyclicProductGroup, mut f: impl FnMut(&[usize]) -> Complex<T>) -> Self {
        let shape = group.shape();
        let mut x = vec![0; group.d];
        let mut values = Vec::with_capacity(group.size());
        loop {
            values.push(f(&x));
            if !index::advance(&mut x, &shape) {
                break;
            }
        }
        Self { group, values }
    }

    /// Plane wave `e^{2πi x·ξ/K}`, an eigenvector of every operator here.
    pub fn plane_wave(group: CyclicProductGroup, xi: &[usize]) -> Self {
        let k = group.k;
        Self::from_fn(group, |x| {
            let dot = x.iter().zip(xi).map(|(a, b)| a * b).sum::<usize>() % k;
            Complex::from_polar(
                T::one(),
                T::lit(2.0) * T::PI() * T::from_count(dot) / T::from_count(k),
            )
        })
    }

    /// Entries with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: CyclicProductGroup, rng: &mut R) -> Self {
        let values = (0..group.size())
            .map(|_| {
                Complex::new(
                    T::lit(rng.gen_range(-1.0..1.0)),
                    T::lit(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        Self { group, values }
    }

    pub fn random_real<R: Rng + ?Sized>(group: CyclicProductGroup, rng: &mut R) -> Self {
        let values = (0..group.size())
            .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::zero()))
            .collect();
        Self { group, values }
    }

    pub fn group(&self) -> CyclicProductGroup {
        self.group
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// `⟨f, g⟩ = Σ f(x) conj(g(x))`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.values
            .iter()
            .zip(&other.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a * b.conj()
            })
    }

    pub fn mean(&self) -> Complex<T> {
        let total = self
            .values
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z);
        total / T::from_count(self.values.len())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|z| z * c)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            group: self.group,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        assert_eq!(
            self.group, other.group,
            "grid functions live on different groups"
        );
        Self {
            group: self.group,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl<T: Real> Sub for &GridFunction<T> {
    type Output = GridFunction<T>;

    fn sub(self, rhs: Self) -> GridFunction<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Real> Add for &GridFunction<T> {
    type Output = GridFunction<T>;

    fn add(self, rhs: Self) -> GridFunction<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

/// Outcome of comparing `∂∂*` and `∂*∂` with `2(I − P)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDifferenceCheck<T> {
    /// Max entrywise deviation over the probed inputs and all axes.
    pub deviation: T,
    pub probes: usize,
    /// The identity is only expected when `μ = μ_{g₀}`.
    pub measure_is_walk: bool,
}

/// The discrete setting: group, walk measure, its spectrum and the shift `g₀`.
#[derive(Debug, Clone)]
pub struct CyclicSetting<T: Real> {
    group: CyclicProductGroup,
    measure: SymmetricMeasure<T>,
    spectrum: WalkSpectrum<T>,
    g0: usize,
    fft: GridFft<T>,
}

impl<T: Real> CyclicSetting<T> {
    pub fn new(group: CyclicProductGroup, measure: SymmetricMeasure<T>, g0: usize) -> Result<Self> {
        if measure.k() != group.k {
            return Err(Error::InvalidParameter(format!(
                "measure lives on Z_{} but the group is Z_{}",
                measure.k(),
                group.k
            )));
        }
        let spectrum = WalkSpectrum::from_measure(&measure);
        Ok(Self {
            group,
            measure,
            spectrum,
            g0: g0 % group.k,
            fft: GridFft::new(group.k, group.d),
        })
    }

    /// `g₀ = 1` with `μ = μ_{g₀}`.
    pub fn standard(group: CyclicProductGroup) -> Result<Self> {
        Self::with_walk(group, 1)
    }

    /// `μ = μ_{g₀}`.
    pub fn with_walk(group: CyclicProductGroup, g0: usize) -> Result<Self> {
        Self::new(group, SymmetricMeasure::walk(group.k, g0)?, g0)
    }

    pub fn group(&self) -> CyclicProductGroup {
        self.group
    }

    pub fn measure(&self) -> &SymmetricMeasure<T> {
        &self.measure
    }

    pub fn spectrum(&self) -> &WalkSpectrum<T> {
        &self.spectrum
    }

    pub fn g0(&self) -> usize {
        self.g0
    }

    /// Laplacian eigenvalues repeated on every axis.
    pub fn product_spectrum(&self) -> ProductSpectrum<T> {
        ProductSpectrum::repeated(self.spectrum.lambda.clone(), self.group.d)
            .expect("walk eigenvalues are non-negative")
    }

    /// Number of joint eigenvalue tuples with `Σ λ < tol`.
    pub fn kernel_dimension(&self, tol: T) -> usize {
        self.product_spectrum().count_near_zero(tol)
    }

    fn check(&self, f: &GridFunction<T>, axis: Option<usize>) -> Result<()> {
        if f.group != self.group {
            return Err(Error::Shape {
                expected: self.group.size(),
                got: f.values.len(),
            });
        }
        axis.map_or(Ok(()), |a| self.group.check_axis(a))
    }

    /// `e^{2πi m/K} − 1 = 2i sin(πm/K) e^{πi m/K}`.
    fn shift_minus_one(&self, m: usize) -> Complex<T> {
        let k = T::from_count(self.group.k);
        let half = T::PI() * T::from_count(m % self.group.k) / k;
        Complex::from_polar(T::lit(2.0) * half.sin(), half + T::FRAC_PI_2())
    }

    fn partial_symbol(&self, xi: usize) -> Complex<T> {
        self.shift_minus_one(self.g0 * xi)
    }

    fn apply_axis_symbol(
        &self,
        f: &GridFunction<T>,
        axis: usize,
        symbol: &[Complex<T>],
    ) -> GridFunction<T> {
        let mut data = f.values.clone();
        self.fft.forward_axis(&mut data, axis);
        let stride = self.fft.stride(axis);
        let k = self.group.k;
        for (i, z) in data.iter_mut().enumerate() {
            *z *= symbol[(i / stride) % k];
        }
        self.fft.inverse_axis(&mut data, axis);
        GridFunction {
            group: self.group,
            values: data,
        }
    }

    fn apply_full_symbol(
        &self,
        f: &GridFunction<T>,
        mut symbol: impl FnMut(&[usize]) -> Complex<T>,
    ) -> GridFunction<T> {
        let mut data = f.values.clone();
        self.fft.forward(&mut data);
        let shape = self.group.shape();
        let mut xi = vec![0; self.group.d];
        for z in data.iter_mut() {
            *z *= symbol(&xi);
            index::advance(&mut xi, &shape);
        }
        self.fft.inverse(&mut data);
        GridFunction {
            group: self.group,
            values: data,
        }
    }

    /// Applies `g ↦ Σ_y w(y) g(x + y e_axis)` directly.
    fn convolve_axis(
        &self,
        f: &GridFunction<T>,
        axis: usize,
        taps: &[(usize, Complex<T>)],
    ) -> GridFunction<T> {
        let k = self.group.k;
        let stride = self.fft.stride(axis);
        let values = (0..f.values.len())
            .map(|i| {
                let xr = (i / stride) % k;
                let base = i - xr * stride;
                taps.iter()
                    .fold(Complex::new(T::zero(), T::zero()), |acc, &(y, w)| {
                        acc + w * f.values[base + ((xr + y) % k) * stride]
                    })
            })
            .collect();
        GridFunction {
            group: self.group,
            values,
        }
    }

    fn measure_taps(&self) -> Vec<(usize, Complex<T>)> {
        self.measure
            .support()
            .map(|(y, w)| (y, Complex::new(w, T::zero())))
            .collect()
    }

    /// `P_μ ⊗ I` along `axis`, through the FFT.
    pub fn apply_p(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let symbol: Vec<_> = self
            .spectrum
            .symbol
            .iter()
            .map(|&s| Complex::new(s, T::zero()))
            .collect();
        Ok(self.apply_axis_symbol(f, axis, &symbol))
    }

    /// `P_μ ⊗ I` along `axis` as the support sum `Σ_y μ(y) f(x + y e_axis)`.
    pub fn apply_p_direct(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        Ok(self.convolve_axis(f, axis, &self.measure_taps()))
    }

    fn check_axes(&self, axes: &[usize]) -> Result<()> {
        axes.iter().try_for_each(|&a| self.group.check_axis(a))
    }

    fn check_time(t: T) -> Result<()> {
        if t >= T::zero() && t.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "heat time must be non-negative, got {t}"
            )))
        }
    }

    /// `Π_{r∈axes} e^{-tL_r}`, spectrally.
    pub fn heat(&self, t: T, f: &GridFunction<T>, axes: &[usize]) -> Result<GridFunction<T>> {
        Self::check_time(t)?;
        self.check(f, None)?;
        self.check_axes(axes)?;
        let symbol: Vec<_> = self
            .spectrum
            .lambda
            .iter()
            .map(|&l| Complex::new((-t * l).exp(), T::zero()))
            .collect();
        let mut out = f.clone();
        for &axis in axes {
            out = self.apply_axis_symbol(&out, axis, &symbol);
        }
        Ok(out)
    }

    /// Heat on every axis, i.e. `e^{-t(L_1+⋯+L_d)}`.
    pub fn heat_all(&self, t: T, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        let axes: Vec<usize> = (0..self.group.d).collect();
        self.heat(t, f, &axes)
    }

    /// `e^{-tL_r} = e^{-t} Σ_{n ≤ terms} tⁿ P_rⁿ / n!` along each listed axis,
    /// using the direct walk.
    pub fn heat_series(
        &self,
        t: T,
        f: &GridFunction<T>,
        axes: &[usize],
        terms: usize,
    ) -> Result<GridFunction<T>> {
        Self::check_time(t)?;
        self.check(f, None)?;
        self.check_axes(axes)?;
        let taps = self.measure_taps();
        let mut out = f.clone();
        for &axis in axes {
            let mut term = out.clone();
            let mut acc = out.clone();
            for n in 1..=terms {
                term = self
                    .convolve_axis(&term, axis, &taps)
                    .scale(Complex::new(t / T::from_count(n), T::zero()));
                acc = &acc + &term;
            }
            out = acc.scale(Complex::new((-t).exp(), T::zero()));
        }
        Ok(out)
    }

    /// `∂_{g₀} ⊗ I` along `axis`: `f(x + g₀ e_axis) − f(x)`.
    pub fn apply_partial(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let one = Complex::new(T::one(), T::zero());
        Ok(self.convolve_axis(f, axis, &[(self.g0, one), (0, -one)]))
    }

    /// Adjoint difference `f(x − g₀ e_axis) − f(x)`.
    pub fn apply_partial_adjoint(
        &self,
        f: &GridFunction<T>,
        axis: usize,
    ) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let one = Complex::new(T::one(), T::zero());
        let back = (self.group.k - self.g0) % self.group.k;
        Ok(self.convolve_axis(f, axis, &[(back, one), (0, -one)]))
    }

    /// `∂_{g₀} ⊗ I` through its symbol `e^{2πi g₀ξ_r/K} − 1`.
    pub fn apply_partial_spectral(
        &self,
        f: &GridFunction<T>,
        axis: usize,
    ) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let symbol: Vec<_> = (0..self.group.k)
            .map(|xi| self.partial_symbol(xi))
            .collect();
        Ok(self.apply_axis_symbol(f, axis, &symbol))
    }

    /// `Π₀ f = f − mean(f)`.
    pub fn apply_pi0(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        self.check(f, None)?;
        let mean = f.mean();
        Ok(f.map(|z| z - mean))
    }

    /// `Π_{0,r}`: subtracts the mean along `axis`.
    pub fn apply_pi0_axis(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let k = self.group.k;
        let inv = T::one() / T::from_count(k);
        let averaged = self.convolve_axis(
            f,
            axis,
            &(0..k)
                .map(|y| (y, Complex::new(inv, T::zero())))
                .collect::<Vec<_>>(),
        );
        Ok(f - &averaged)
    }

    fn partial_table(&self) -> Vec<Complex<T>> {
        (0..self.group.k)
            .map(|xi| self.partial_symbol(xi))
            .collect()
    }

    fn riesz_symbol(&self, table: &[Complex<T>], axis: usize, xi: &[usize]) -> Complex<T> {
        let lambda = &self.spectrum.lambda;
        let total = xi.iter().fold(T::zero(), |acc, &x| acc + lambda[x]);
        if total.is_zero() {
            Complex::new(T::zero(), T::zero())
        } else {
            table[xi[axis]] / total.sqrt()
        }
    }

    /// `R_r = (∂_{g₀} ⊗ I_{(r)}) (L_1 + ⋯ + L_d)^{-1/2} Π₀`.
    pub fn riesz(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let table = self.partial_table();
        Ok(self.apply_full_symbol(f, |xi| self.riesz_symbol(&table, axis, xi)))
    }

    /// Adjoint of [`riesz`](Self::riesz) (conjugate symbol).
    pub fn riesz_adjoint(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let table = self.partial_table();
        Ok(self.apply_full_symbol(f, |xi| self.riesz_symbol(&table, axis, xi).conj()))
    }

    fn one_dim_symbol(&self) -> Vec<Complex<T>> {
        (0..self.group.k)
            .map(|xi| {
                let l = self.spectrum.lambda[xi];
                if l.is_zero() {
                    Complex::new(T::zero(), T::zero())
                } else {
                    self.partial_symbol(xi) / l.sqrt()
                }
            })
            .collect()
    }

    /// `R ⊗ I_{(r)} = (∂_{g₀} ⊗ I_{(r)}) L_r^{-1/2} Π_{0,r}`, acting on axis `r` only.
    pub fn one_dim_riesz_tensor(
        &self,
        f: &GridFunction<T>,
        axis: usize,
    ) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        Ok(self.apply_axis_symbol(f, axis, &self.one_dim_symbol()))
    }

    pub fn one_dim_riesz_tensor_adjoint(
        &self,
        f: &GridFunction<T>,
        axis: usize,
    ) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let symbol: Vec<_> = self
            .one_dim_symbol()
            .into_iter()
            .map(|z| z.conj())
            .collect();
        Ok(self.apply_axis_symbol(f, axis, &symbol))
    }

    /// `(L_r + ε)^σ (L_1 + ⋯ + L_d + dε)^{-σ} Π_{0,r}`.
    pub fn joint_factor(
        &self,
        f: &GridFunction<T>,
        axis: usize,
        sigma: T,
        epsilon: T,
    ) -> Result<GridFunction<T>> {
        self.check(f, Some(axis))?;
        let mult = JointMultiplier::axis_ratio(axis, self.group.d, sigma, epsilon)?;
        let mut data = f.values.clone();
        self.fft.forward(&mut data);
        apply_diagonal_in_place(&mult, &self.product_spectrum(), &mut data)?;
        self.fft.inverse(&mut data);
        Ok(GridFunction {
            group: self.group,
            values: data,
        })
    }

    /// `(R ⊗ I_{(r)}) ∘ L_r^{1/2}(L_1 + ⋯ + L_d)^{-1/2} Π_{0,r}`, the factored
    /// form of `R_r`.
    pub fn riesz_factored(&self, f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
        let factor = self.joint_factor(f, axis, T::lit(0.5), T::zero())?;
        self.one_dim_riesz_tensor(&factor, axis)
    }

    /// `(Σ_r |R_r f|²)^{1/2}` pointwise, as a real-valued grid function.
    pub fn square_function(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        self.check(f, None)?;
        let mut acc = vec![T::zero(); f.values.len()];
        for axis in 0..self.group.d {
            let rf = self.riesz(f, axis)?;
            acc.iter_mut()
                .zip(&rf.values)
                .for_each(|(a, z)| *a += z.norm_sqr());
        }
        Ok(GridFunction {
            group: self.group,
            values: acc
                .into_iter()
                .map(|a| Complex::new(a.sqrt(), T::zero()))
                .collect(),
        })
    }

    /// Compares `∂∂*` and `∂*∂` against `2(I − P)` on every axis, probing
    /// all basis vectors when `K^d ≤ max_basis`, else `samples` random inputs.
    pub fn double_difference_check<R: Rng + ?Sized>(
        &self,
        max_basis: usize,
        samples: usize,
        rng: &mut R,
    ) -> Result<DoubleDifferenceCheck<T>> {
        let n = self.group.size();
        let probes: Vec<GridFunction<T>> = if n <= max_basis {
            (0..n).map(|i| GridFunction::basis(self.group, i)).collect()
        } else {
            (0..samples)
                .map(|_| GridFunction::random(self.group, rng))
                .collect()
        };
        let two = Complex::new(T::lit(2.0), T::zero());
        let mut deviation = T::zero();
        for f in &probes {
            for axis in 0..self.group.d {
                let lf = f - &self.apply_p_direct(f, axis)?;
                let expected = lf.scale(two);
                let dds = self.apply_partial(&self.apply_partial_adjoint(f, axis)?, axis)?;
                let dsd = self.apply_partial_adjoint(&self.apply_partial(f, axis)?, axis)?;
                for got in [dds, dsd] {
                    let dev = (&got - &expected)
                        .values
                        .iter()
                        .fold(T::zero(), |m, z| m.max(z.norm()));
                    deviation = deviation.max(dev);
                }
            }
        }
        Ok(DoubleDifferenceCheck {
            deviation,
            probes: probes.len(),
            measure_is_walk: self.measure.is_walk_of(self.g0),
        })
    }

    /// Exact `‖R_r‖_{2→2}`: the largest symbol modulus, with the first
    /// frequency (row-major) attaining it.
    pub fn riesz_multiplier_sup(&self, axis: usize) -> Result<(T, Vec<usize>)> {
        self.group.check_axis(axis)?;
        let shape = self.group.shape();
        let mut xi = vec![0; self.group.d];
        let mut best = (T::zero(), xi.clone());
        let table = self.partial_table();
        loop {
            let m = self.riesz_symbol(&table, axis, &xi).norm();
            if m > best.0 {
                best = (m, xi.clone());
            }
            if !index::advance(&mut xi, &shape) {
                return Ok(best);
            }
        }
    }

    /// `R_r` as a black-box operator for the norm estimators.
    pub fn riesz_operator(&self, axis: usize) -> Result<RieszOperator<'_, T>> {
        self.group.check_axis(axis)?;
        Ok(RieszOperator {
            setting: self,
            axis,
        })
    }

    /// `e^{-t(L_1+⋯+L_d)}` as a black-box operator.
    pub fn heat_operator(&self, t: T) -> Result<HeatOperator<'_, T>> {
        Self::check_time(t)?;
        Ok(HeatOperator { setting: self, t })
    }

    fn wrap(&self, x: &[Complex<T>]) -> GridFunction<T> {
        GridFunction::new(self.group, x.to_vec()).expect("operator input has the grid size")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RieszOperator<'a, T: Real> {
    setting: &'a CyclicSetting<T>,
    axis: usize,
}

impl<T: Real> LinearOperator<T> for RieszOperator<'_, T> {
    fn dim_in(&self) -> usize {
        self.setting.group.size()
    }

    fn dim_out(&self) -> usize {
        self.setting.group.size()
    }

    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let f = self.setting.wrap(x);
        self.setting
            .riesz(&f, self.axis)
            .expect("axis checked")
            .into_values()
    }

    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        let f = self.setting.wrap(y);
        self.setting
            .riesz_adjoint(&f, self.axis)
            .expect("axis checked")
            .into_values()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HeatOperator<'a, T: Real> {
    setting: &'a CyclicSetting<T>,
    t: T,
}

impl<T: Real> LinearOperator<T> for HeatOperator<'_, T> {
    fn dim_in(&self) -> usize {
        self.setting.group.size()
    }

    fn dim_out(&self) -> usize {
        self.setting.group.size()
    }

    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let f = self.setting.wrap(x);
        self.setting
            .heat_all(self.t, &f)
            .expect("time checked")
            .into_values()
    }

    // self-adjoint
    fn apply_adjoint(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        self.apply(y)
    }
}
