//! Closed-form evaluation of `S_n(r) = Σ_{i=1..n} i^(1/r)` and everything
//! built on top of it: the correction term `φ_n(r)` left over by the
//! two-term closed form, a Stirling-like factorial estimate, a
//! hyperfactorial main term, and the numerical machinery (compensated
//! summation oracles, finite differences, limit extrapolation) needed to
//! quantify all of it.
//!
//! Core numeric kernels are generic over the scalar type via [`Real`];
//! the experiment and report layers are `f64` only. Concrete `f64`
//! aliases for the generic domain types live at the crate root.

pub mod calculus;
pub mod closed_form;
mod error;
pub mod experiments;
pub mod oracle;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Scalar type accepted by the numeric kernels: `f32`, `f64`, or any
/// other IEEE-style float implementing the `num-traits` surface.
pub trait Real: num_traits::Float + num_traits::FromPrimitive + std::fmt::Debug {}

impl<T: num_traits::Float + num_traits::FromPrimitive + std::fmt::Debug> Real for T {}

#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}

/// √(2π), the value `e^ξ` converges to.
pub const SQRT_2PI: f64 = 2.5066282746310002;

/// ln √(2π), the limiting value of `ξ_n`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub type RootIndex64 = oracle::RootIndex<f64>;
pub type RiemannPartitionSums64 = oracle::RiemannPartitionSums<f64>;
pub type ApproxBreakdown64 = closed_form::ApproxBreakdown<f64>;
pub type PhiSample64 = closed_form::PhiSample<f64>;
pub type FactorialEstimate64 = closed_form::FactorialEstimate<f64>;
pub type DifferenceScheme64 = calculus::DifferenceScheme<f64>;
pub type XiEstimate64 = calculus::XiEstimate<f64>;
