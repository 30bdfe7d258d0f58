//! Multi-dimensional Riesz transforms as joint spectral multipliers.
//!
//! Two fully diagonalizable settings are provided: products of cyclic groups
//! `(Z_K)^d` with a random-walk Laplacian ([`group`]), and truncated
//! Hermite expansions with the Ornstein–Uhlenbeck system ([`hermite`]).
//! [`spectral`] holds the shared multiplier language and [`pnorm`] brackets
//! `ℓ^p` operator norms.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `f64` aliases below are what the tolerances in the docs refer to.

// `!(x >= 0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fft;
pub mod group;
pub mod hermite;
pub mod index;
pub mod pnorm;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use group::{CyclicProductGroup, DoubleDifferenceCheck};
pub use hermite::HermiteTruncation;
pub use pnorm::{BoydOptions, ExactNorm, LinearOperator, Method, PowerOptions};
pub use scalar::Real;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;

pub type ProductSpectrum = spectral::ProductSpectrum<f64>;
pub type JointMultiplier = spectral::JointMultiplier<f64>;
pub type SectorSpec = spectral::SectorSpec<f64>;
pub type SymmetricMeasure = group::SymmetricMeasure<f64>;
pub type WalkSpectrum = group::WalkSpectrum<f64>;
pub type GridFunction = group::GridFunction<f64>;
pub type CyclicSetting = group::CyclicSetting<f64>;
pub type CoeffTensor = hermite::CoeffTensor<f64>;
pub type QuadratureRule = hermite::QuadratureRule<f64>;
pub type NormEstimate = pnorm::NormEstimate<f64>;
pub type DenseMatrix = pnorm::DenseMatrix<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type GridFunction = crate::group::GridFunction<f32>;
    pub type CyclicSetting = crate::group::CyclicSetting<f32>;
    pub type CoeffTensor = crate::hermite::CoeffTensor<f32>;
    pub type QuadratureRule = crate::hermite::QuadratureRule<f32>;
    pub type NormEstimate = crate::pnorm::NormEstimate<f32>;
}
