//! Joint spectral multipliers on product systems.
//!
//! A commuting system `L = (L_1, …, L_d)` acting on separate variables is
//! diagonalized by a product basis, so a function `m` of the joint spectrum
//! acts on expansion coefficients by pointwise scaling. This module holds
//! that language: the per-axis eigenvalue lists, the multiplier object with
//! its zero-frequency policy, the two-variable multiplier
//! `m_σ(z₁, z₂) = z₁^σ (z₁ + z₂)^{-σ}` and sampling of its supremum over
//! polysectors.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index;
use crate::scalar::Real;

/// Per-axis eigenvalue arrays; the joint spectrum is their Cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpectrum<T> {
    axes: Vec<Vec<T>>,
}

impl<T: Real> ProductSpectrum<T> {
    pub fn new(axes: Vec<Vec<T>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidParameter(
                "product spectrum needs at least one axis".into(),
            ));
        }
        for (r, axis) in axes.iter().enumerate() {
            if axis.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "axis {r} has no eigenvalues"
                )));
            }
            if let Some(bad) = axis.iter().find(|l| !(**l >= T::zero()) || !l.is_finite()) {
                return Err(Error::Domain(format!(
                    "eigenvalue {bad} on axis {r} is not a finite non-negative number"
                )));
            }
        }
        Ok(Self { axes })
    }

    /// The same eigenvalue list repeated on `d` axes.
    pub fn repeated(axis: Vec<T>, d: usize) -> Result<Self> {
        Self::new(vec![axis; d])
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, r: usize) -> &[T] {
        &self.axes[r]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Number of joint eigenvalue tuples, saturating at `usize::MAX`.
    pub fn len(&self) -> usize {
        index::checked_volume(&self.shape())
            .and_then(|v| usize::try_from(v).ok())
            .unwrap_or(usize::MAX)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of joint tuples whose eigenvalue sum is below `tol`.
    pub fn count_near_zero(&self, tol: T) -> usize {
        let shape = self.shape();
        let mut idx = vec![0; shape.len()];
        let mut count = 0;
        loop {
            let sum = idx
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (r, &i)| acc + self.axes[r][i]);
            if sum < tol {
                count += 1;
            }
            if !index::advance(&mut idx, &shape) {
                return count;
            }
        }
    }
}

type EvalFn<T> = dyn Fn(&[T]) -> Complex<T> + Send + Sync;

/// A function of the joint spectrum together with the value it takes at the
/// origin `λ = 0`, where the formulas of interest are singular.
///
/// The zero value defaults to 0, which composes the multiplier with the
/// projection onto the complement of the joint kernel.
#[derive(Clone)]
pub struct JointMultiplier<T> {
    eval: Arc<EvalFn<T>>,
    zero_value: Complex<T>,
}

impl<T: Real> fmt::Debug for JointMultiplier<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JointMultiplier")
            .field("zero_value", &self.zero_value)
            .finish_non_exhaustive()
    }
}

impl<T: Real> JointMultiplier<T> {
    pub fn new(eval: impl Fn(&[T]) -> Complex<T> + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            zero_value: Complex::new(T::zero(), T::zero()),
        }
    }

    /// Constant multiplier; its zero value is the same constant, so
    /// `constant(1)` is the exact identity.
    pub fn constant(c: Complex<T>) -> Self {
        Self::new(move |_| c).with_zero_value(c)
    }

    pub fn with_zero_value(mut self, value: Complex<T>) -> Self {
        self.zero_value = value;
        self
    }

    pub fn zero_value(&self) -> Complex<T> {
        self.zero_value
    }

    /// Evaluates at a joint eigenvalue tuple, applying the zero policy when
    /// `λ₁ + ⋯ + λ_d = 0`.
    pub fn at(&self, lambda: &[T]) -> Complex<T> {
        if lambda.iter().fold(T::zero(), |acc, &l| acc + l).is_zero() {
            self.zero_value
        } else {
            (self.eval)(lambda)
        }
    }

    /// Pointwise product; zero values multiply as well.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self {
            eval: Arc::new(move |l| a(l) * b(l)),
            zero_value: self.zero_value * other.zero_value,
        }
    }

    /// Heat semigroup `e^{-t(λ₁+⋯+λ_d)}`; equals 1 at the origin.
    pub fn heat(t: T) -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::new(move |l| {
            let s = l.iter().fold(T::zero(), |acc, &x| acc + x);
            Complex::new((-t * s).exp(), T::zero())
        })
        .with_zero_value(one)
    }

    /// `(λ_r + ε)^σ (λ₁ + ⋯ + λ_d + dε)^{-σ}` composed with the projection
    /// removing `λ_r = 0`, on a `d`-axis spectrum.
    ///
    /// At `ε = 0` this is `m_σ(λ_r, Σ_{s≠r} λ_s)`.
    pub fn axis_ratio(axis: usize, d: usize, sigma: T, epsilon: T) -> Result<Self> {
        if axis >= d {
            return Err(Error::Axis { axis, dim: d });
        }
        if !(sigma > T::zero()) {
            return Err(Error::Domain(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !(epsilon >= T::zero()) || !epsilon.is_finite() {
            return Err(Error::Domain(format!(
                "epsilon must be non-negative, got {epsilon}"
            )));
        }
        let zero = Complex::new(T::zero(), T::zero());
        let rest_shift = epsilon * T::from_count(d - 1);
        let half = sigma == T::lit(0.5);
        // On the non-negative reals the principal powers are real, so this
        // is `eval_m_sigma` without the complex logarithms.
        Ok(Self::new(move |l| {
            if l[axis].is_zero() {
                return zero;
            }
            let rest = l
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != axis)
                .fold(T::zero(), |acc, (_, &x)| acc + x);
            let z1 = l[axis] + epsilon;
            let w = z1 + rest + rest_shift;
            if z1 < T::zero() || w <= T::zero() {
                return zero;
            }
            let q = z1 / w;
            Complex::new(if half { q.sqrt() } else { q.powf(sigma) }, T::zero())
        }))
    }
}

/// `m_σ(z₁, z₂) = z₁^σ (z₁ + z₂)^{-σ}` with both powers on the principal
/// branch, evaluated as `exp(σ (Log z₁ − Log(z₁ + z₂)))`.
///
/// Defined on the closed right half-plane in each variable; `z₁ = 0` maps to
/// 0, the `σ > 0` limit.
pub fn eval_m_sigma<T: Real>(z1: Complex<T>, z2: Complex<T>, sigma: T) -> Result<Complex<T>> {
    if !(sigma > T::zero()) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if z1.re < T::zero() || z2.re < T::zero() {
        return Err(Error::Domain(format!(
            "arguments must lie in the closed right half-plane, got {z1} and {z2}"
        )));
    }
    if z1.re.is_zero() && z1.im.is_zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let w = z1 + z2;
    if w.re.is_zero() && w.im.is_zero() {
        return Err(Error::Domain(format!("z1 + z2 = 0 at z1 = {z1}")));
    }
    Ok(((z1.ln() - w.ln()) * sigma).exp())
}

/// Scales each coefficient by the multiplier at its joint eigenvalue tuple.
/// Coefficients are laid out row-major over the spectrum's axes.
pub fn apply_diagonal<T: Real>(
    mult: &JointMultiplier<T>,
    spectrum: &ProductSpectrum<T>,
    coeffs: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let mut out = coeffs.to_vec();
    apply_diagonal_in_place(mult, spectrum, &mut out)?;
    Ok(out)
}

pub fn apply_diagonal_in_place<T: Real>(
    mult: &JointMultiplier<T>,
    spectrum: &ProductSpectrum<T>,
    coeffs: &mut [Complex<T>],
) -> Result<()> {
    let shape = spectrum.shape();
    let expected = spectrum.len();
    if coeffs.len() != expected {
        return Err(Error::Shape {
            expected,
            got: coeffs.len(),
        });
    }
    let mut idx = vec![0; shape.len()];
    let mut lambda: Vec<T> = idx
        .iter()
        .enumerate()
        .map(|(r, &i)| spectrum.axes[r][i])
        .collect();
    for c in coeffs.iter_mut() {
        *c *= mult.at(&lambda);
        if !index::advance(&mut idx, &shape) {
            break;
        }
        for (r, &i) in idx.iter().enumerate() {
            lambda[r] = spectrum.axes[r][i];
        }
    }
    Ok(())
}

/// A sampled polysector `S_φ = {|Arg z₁| ≤ φ₁} × {|Arg z₂| ≤ φ₂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec<T> {
    pub angles: [T; 2],
    pub r_min: T,
    pub r_max: T,
    pub angular: usize,
    pub radial: usize,
}

impl<T: Real> SectorSpec<T> {
    /// Sector with the default radial range `[1e-6, 1e6]`.
    pub fn new(angles: [T; 2], angular: usize, radial: usize) -> Result<Self> {
        Self::with_radii(angles, T::lit(1e-6), T::lit(1e6), angular, radial)
    }

    pub fn with_radii(
        angles: [T; 2],
        r_min: T,
        r_max: T,
        angular: usize,
        radial: usize,
    ) -> Result<Self> {
        for phi in angles {
            if !(phi > T::zero() && phi <= T::FRAC_PI_2()) {
                return Err(Error::Domain(format!(
                    "sector angle {phi} outside (0, pi/2]"
                )));
            }
        }
        if !(r_min > T::zero() && r_min < r_max && r_max.is_finite()) {
            return Err(Error::Domain(format!(
                "radial range [{r_min}, {r_max}] invalid"
            )));
        }
        if angular < 2 || radial < 2 {
            return Err(Error::InvalidParameter(
                "sector grid counts must be at least 2".into(),
            ));
        }
        Ok(Self {
            angles,
            r_min,
            r_max,
            angular,
            radial,
        })
    }

    /// Sample points of one coordinate: angle-major, log-spaced radius minor.
    fn samples(&self, coord: usize) -> Vec<Complex<T>> {
        let phi = self.angles[coord];
        let a_den = T::from_count(self.angular - 1);
        let r_den = T::from_count(self.radial - 1);
        let log_ratio = (self.r_max / self.r_min).ln();
        let two = T::lit(2.0);
        let mut out = Vec::with_capacity(self.angular * self.radial);
        for i in 0..self.angular {
            let theta = -phi + two * phi * T::from_count(i) / a_den;
            for j in 0..self.radial {
                let r = self.r_min * (log_ratio * T::from_count(j) / r_den).exp();
                out.push(Complex::from_polar(r, theta));
            }
        }
        out
    }
}

/// Largest sampled `|m_σ|` and the first point (row-major) attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSup<T> {
    pub value: T,
    pub argmax: [Complex<T>; 2],
    /// Sample pairs skipped because `z₁ + z₂ = 0` (only possible at φ = π/2).
    pub skipped: usize,
}

pub fn sector_sup<T: Real>(sigma: T, spec: &SectorSpec<T>) -> Result<SectorSup<T>> {
    if !(sigma > T::zero()) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let first = spec.samples(0);
    let second = spec.samples(1);
    // Per-row maxima in parallel, then an index-ordered reduce.
    let rows: Vec<(T, usize, usize)> = first
        .par_iter()
        .map(|&z1| {
            let mut best = (T::neg_infinity(), 0usize, 0usize);
            for (j, &z2) in second.iter().enumerate() {
                match eval_m_sigma(z1, z2, sigma) {
                    Ok(v) => {
                        let m = v.norm();
                        if m > best.0 {
                            best = (m, j, best.2);
                        }
                    }
                    Err(_) => best.2 += 1,
                }
            }
            best
        })
        .collect();
    let mut value = T::neg_infinity();
    let mut argmax = [first[0], second[0]];
    let mut skipped = 0;
    for (i, &(m, j, skip)) in rows.iter().enumerate() {
        skipped += skip;
        if m > value {
            value = m;
            argmax = [first[i], second[j]];
        }
    }
    Ok(SectorSup {
        value,
        argmax,
        skipped,
    })
}

/// `p* = arcsin|2/p − 1|`, the critical sector angle for `L^p` calculus.
pub fn p_star<T: Real>(p: T) -> Result<T> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::Domain(format!("p must lie in (1, inf), got {p}")));
    }
    Ok((T::lit(2.0) / p - T::one()).abs().asin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn m_sigma_examples() {
        assert!((eval_m_sigma(c(1., 0.), c(1., 0.), 1.0).unwrap() - c(0.5, 0.)).norm() < 1e-15);
        assert!((eval_m_sigma(c(1., 0.), c(3., 0.), 0.5).unwrap() - c(0.5, 0.)).norm() < 1e-15);
        for lam in [1e-8, 0.3, 7.0, 1e9] {
            for sigma in [0.1, 0.5, 2.0, 5.5] {
                let v = eval_m_sigma(c(lam, 0.), c(0., 0.), sigma).unwrap();
                assert!((v - c(1., 0.)).norm() < 1e-14, "{lam} {sigma} {v}");
            }
        }
        assert_eq!(eval_m_sigma(c(0., 0.), c(2., 1.), 0.5).unwrap(), c(0., 0.));
    }

    #[test]
    fn m_sigma_errors() {
        assert!(eval_m_sigma(c(1., 0.), c(1., 0.), 0.0).is_err());
        assert!(eval_m_sigma(c(1., 0.), c(1., 0.), -1.0).is_err());
        assert!(eval_m_sigma(c(0., 1.), c(0., -1.), 0.5).is_err());
        assert!(eval_m_sigma(c(-1., 0.), c(1., 0.), 0.5).is_err());
    }

    #[test]
    fn m_sigma_uses_principal_branch() {
        // z1 = i, z2 = 0 => i^σ · i^{-σ} = 1; z1 = i, z2 = 1 => (i/(1+i))^σ
        let v = eval_m_sigma(c(0., 1.), c(1., 0.), 0.5).unwrap();
        let ratio = c(0., 1.) / c(1., 1.);
        let expected = (ratio.ln() * 0.5).exp();
        assert!((v - expected).norm() < 1e-15);
        // principal root of i/(1+i) = (1+i)/2 has positive real part
        assert!(v.re > 0.0);
    }

    #[test]
    fn apply_diagonal_identity_and_zero() {
        let spec = ProductSpectrum::repeated(vec![0.0, 1.0, 2.0, 1.0], 2).unwrap();
        let coeffs: Vec<_> = (0..16).map(|i| c(i as f64, -(i as f64) / 3.0)).collect();
        let one = JointMultiplier::constant(c(1., 0.));
        assert_eq!(apply_diagonal(&one, &spec, &coeffs).unwrap(), coeffs);
        let zero = JointMultiplier::constant(c(0., 0.));
        assert!(apply_diagonal(&zero, &spec, &coeffs)
            .unwrap()
            .iter()
            .all(|z| *z == c(0., 0.)));
    }

    #[test]
    fn apply_diagonal_m_half_at_two_two() {
        let spec = ProductSpectrum::repeated(vec![0.0, 1.0, 2.0, 1.0], 2).unwrap();
        let mut coeffs = vec![c(0., 0.); 16];
        coeffs[2 * 4 + 2] = c(1., 0.);
        let m = JointMultiplier::axis_ratio(0, 2, 0.5, 0.0).unwrap();
        let out = apply_diagonal(&m, &spec, &coeffs).unwrap();
        assert!((out[10] - c(0.5f64.sqrt(), 0.)).norm() < 1e-15);
        assert!(out
            .iter()
            .enumerate()
            .all(|(i, z)| i == 10 || *z == c(0., 0.)));
    }

    #[test]
    fn apply_diagonal_shape_mismatch() {
        let spec = ProductSpectrum::repeated(vec![0.0, 1.0], 3).unwrap();
        let m = JointMultiplier::constant(c(1., 0.));
        assert_eq!(
            apply_diagonal(&m, &spec, &[c(0., 0.); 7]),
            Err(Error::Shape {
                expected: 8,
                got: 7
            })
        );
    }

    #[test]
    fn spectrum_validation() {
        assert!(ProductSpectrum::<f64>::new(vec![]).is_err());
        assert!(ProductSpectrum::<f64>::new(vec![vec![]]).is_err());
        assert!(ProductSpectrum::new(vec![vec![0.0, -1e-3]]).is_err());
        assert!(ProductSpectrum::new(vec![vec![0.0, f64::NAN]]).is_err());
    }

    #[test]
    fn p_star_examples() {
        assert_eq!(p_star(2.0).unwrap(), 0.0);
        assert!((p_star(4.0).unwrap() - FRAC_PI_6).abs() < 1e-15);
        assert!((p_star(1.0 + 1e-12).unwrap() - FRAC_PI_2).abs() < 1e-5);
        assert!((p_star(4.0 / 3.0).unwrap() - FRAC_PI_6).abs() < 1e-15);
        assert!(p_star(1.0).is_err());
        assert!(p_star(f64::INFINITY).is_err());
        assert!(p_star(0.5).is_err());
    }

    #[test]
    fn sector_sup_on_positive_reals_is_one() {
        // φ tiny ≈ positive reals: sup of λ₁/(λ₁+λ₂) over the grid
        let spec = SectorSpec::<f64>::new([1e-9, 1e-9], 2, 64).unwrap();
        let sup = sector_sup(1.0, &spec).unwrap();
        assert!((sup.value - 1.0).abs() < 1e-9, "{}", sup.value);
        assert!(sup.value <= 1.0 + 1e-12);
    }

    #[test]
    fn sector_sup_quarter_sector_regression() {
        // Dense-sampling values frozen from the first run: the supremum over
        // S_(π/4, π/4) is approached as z₂/z₁ → 0 and equals 1 for every σ.
        let spec = SectorSpec::new([FRAC_PI_4, FRAC_PI_4], 64, 32).unwrap();
        let half = sector_sup(0.5, &spec).unwrap();
        let two = sector_sup(2.0, &spec).unwrap();
        assert_eq!(half.value, 1.0);
        assert_eq!(two.value, 1.0);
        assert!(two.value >= half.value);
        assert_eq!(half.skipped, 0);
    }

    #[test]
    fn sector_sup_exceeds_one_past_right_angle() {
        // |z₁ + z₂| can drop below |z₁| once the opening φ₁ + φ₂ exceeds π/2:
        // sup_ρ 1/|1 + ρ e^{-iα}| = 1/sin α for α > π/2.
        let phi = 1.2f64;
        let spec = SectorSpec::with_radii([phi, phi], 1e-2, 1e2, 16, 101).unwrap();
        let sup = sector_sup(1.0, &spec).unwrap();
        let analytic = 1.0 / (2.0 * phi).sin();
        assert!(sup.value <= analytic * (1.0 + 1e-12));
        assert!(sup.value > 0.99 * analytic, "{} vs {analytic}", sup.value);
    }

    #[test]
    fn sector_sup_monotone_in_angle() {
        let mut prev = 0.0;
        for k in 1..=10 {
            let phi = FRAC_PI_2 * k as f64 / 10.5;
            let spec = SectorSpec::new([phi, 0.7], 9, 17).unwrap();
            let v = sector_sup(0.75, &spec).unwrap().value;
            assert!(v >= prev, "angle {phi}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn sector_spec_validation() {
        assert!(SectorSpec::new([0.0, 0.5], 4, 4).is_err());
        assert!(SectorSpec::new([0.5, 2.0], 4, 4).is_err());
        assert!(SectorSpec::new([0.5, 0.5], 1, 4).is_err());
        assert!(SectorSpec::with_radii([0.5, 0.5], 0.0, 1.0, 4, 4).is_err());
        assert!(SectorSpec::with_radii([0.5, 0.5], 2.0, 1.0, 4, 4).is_err());
    }

    fn arg_in(phi: f64) -> impl Strategy<Value = Complex<f64>> {
        (1e-3..1e3f64, -phi..phi).prop_map(|(r, t)| Complex::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn m_sigma_is_homogeneous_of_degree_zero(
            z1 in arg_in(1.4), z2 in arg_in(1.4), t in 1e-3..1e3f64, sigma in 0.05..4.0f64
        ) {
            let a = eval_m_sigma(z1, z2, sigma).unwrap();
            let b = eval_m_sigma(z1 * t, z2 * t, sigma).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        }

        #[test]
        fn m_sigma_exponents_add(
            z1 in arg_in(1.5), z2 in arg_in(1.5), s in 0.05..3.0f64, s2 in 0.05..3.0f64
        ) {
            let a = eval_m_sigma(z1, z2, s).unwrap() * eval_m_sigma(z1, z2, s2).unwrap();
            let b = eval_m_sigma(z1, z2, s + s2).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * b.norm());
        }

        #[test]
        fn m_sigma_on_reals_in_unit_interval(
            l1 in 1e-9..1e9f64, l2 in prop_oneof![Just(0.0), 1e-9..1e9f64], sigma in 0.01..6.0f64
        ) {
            let m = eval_m_sigma(c(l1, 0.), c(l2, 0.), sigma).unwrap().norm();
            prop_assert!(m > 0.0 && m <= 1.0 + 1e-15);
        }

        #[test]
        fn apply_diagonal_composes(
            axes in prop::collection::vec(prop::collection::vec(0.0..3.0f64, 1..4), 1..4),
            seed in any::<u64>()
        ) {
            let spec = ProductSpectrum::new(axes).unwrap();
            let n = spec.len();
            let coeffs: Vec<_> = (0..n)
                .map(|i| c(((seed >> (i % 60)) & 7) as f64 - 3.5, i as f64 * 0.25))
                .collect();
            let m = JointMultiplier::axis_ratio(0, spec.ndim(), 0.5, 0.0).unwrap();
            let h = JointMultiplier::heat(0.3);
            let twice = apply_diagonal(&h, &spec, &apply_diagonal(&m, &spec, &coeffs).unwrap()).unwrap();
            let once = apply_diagonal(&m.product(&h), &spec, &coeffs).unwrap();
            for (a, b) in twice.iter().zip(&once) {
                prop_assert!((a - b).norm() <= 1e-14 * a.norm().max(1.0));
            }
        }
    }
}
