//! The closed-form estimators: the two-term approximation of the root
//! sum, its residual φ, the Stirling-like factorial estimate, and the
//! hyperfactorial main term.
//!
//! φ is defined operationally as `approx - exact`: the observable gap
//! between the closed form and the brute-force sum.

use crate::oracle::{self, RootIndex};
use crate::{real, Error, Real, Result};

/// The two terms of the closed form and their difference.
#[derive(Clone, Copy, Debug)]
pub struct ApproxBreakdown<T> {
    /// `r/(r+1) · (n+1)^((1+r)/r)`
    pub leading: T,
    /// `(1/2) · (n+1)^(1/r)`
    pub half_term: T,
    /// `leading - half_term`
    pub approx: T,
}

/// One evaluation of φ with the approximation breakdown it came from.
#[derive(Clone, Copy, Debug)]
pub struct PhiSample<T> {
    pub n: u64,
    pub r: RootIndex<T>,
    /// `approx - exact`; bounded in `[0, 1/2]` on the validated grid.
    pub phi: T,
    pub breakdown: ApproxBreakdown<T>,
    pub exact: T,
}

/// Factorial estimate `(n + 1/2) ln(n+1) - (n+1) + ξ` with the classical
/// Stirling baseline and the exact log-factorial for comparison.
#[derive(Clone, Copy, Debug)]
pub struct FactorialEstimate<T> {
    pub n: u64,
    pub log_estimate: T,
    pub xi_used: T,
    pub stirling_log: T,
    pub exact_log: T,
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// The two-term closed form for `Σ_{i=1..n} i^(1/r)` (without φ).
pub fn approx_root_sum<T: Real>(n: u64, r: RootIndex<T>) -> Result<ApproxBreakdown<T>> {
    check_n(n)?;
    let r = r.get();
    let one = T::one();
    let np1 = T::from_u64(n + 1).unwrap();
    let leading = r / (r + one) * np1.powf((one + r) / r);
    let half_term = np1.powf(one / r) / real::<T>(2.0);
    let approx = leading - half_term;
    if !approx.is_finite() {
        return Err(Error::Overflow {
            context: format!("evaluating the closed form at n = {n}"),
        });
    }
    Ok(ApproxBreakdown {
        leading,
        half_term,
        approx,
    })
}

/// φ_n(r) = closed form minus brute-force sum.
pub fn phi<T: Real>(n: u64, r: RootIndex<T>) -> Result<PhiSample<T>> {
    let breakdown = approx_root_sum(n, r)?;
    let exact = oracle::exact_root_sum(n, r)?;
    Ok(PhiSample {
        n,
        r,
        phi: breakdown.approx - exact,
        breakdown,
        exact,
    })
}

/// Classical Stirling baseline `(1/2) ln(2πn) + n ln n - n`.
pub fn stirling_log<T: Real>(n: u64) -> Result<T> {
    check_n(n)?;
    let n_t = T::from_u64(n).unwrap();
    let two_pi = real::<T>(std::f64::consts::TAU);
    Ok((two_pi * n_t).ln() / real::<T>(2.0) + n_t * n_t.ln() - n_t)
}

/// `ln n! ≈ (n + 1/2) ln(n+1) - (n+1) + ξ` for a caller-supplied ξ.
pub fn factorial_log_estimate<T: Real>(n: u64, xi: T) -> Result<FactorialEstimate<T>> {
    check_n(n)?;
    if !xi.is_finite() {
        return Err(Error::InvalidArgument("xi must be finite".into()));
    }
    let np1 = T::from_u64(n + 1).unwrap();
    let half = real::<T>(0.5);
    let log_estimate = (T::from_u64(n).unwrap() + half) * np1.ln() - np1 + xi;
    Ok(FactorialEstimate {
        n,
        log_estimate,
        xi_used: xi,
        stirling_log: stirling_log(n)?,
        exact_log: oracle::exact_log_factorial(n)?,
    })
}

/// Hyperfactorial main term `(n(n+1)/2) ln(n+1) - (n+1)²/4`.
pub fn hyperfactorial_main_term<T: Real>(n: u64) -> Result<T> {
    check_n(n)?;
    let n_t = T::from_u64(n).unwrap();
    let np1 = T::from_u64(n + 1).unwrap();
    let two = real::<T>(2.0);
    Ok(n_t * np1 / two * np1.ln() - np1 * np1 / real::<T>(4.0))
}

/// `ln H(n)` minus the main term; equals `dφ/dr` at r = 1.
pub fn hyperfactorial_residual<T: Real>(n: u64) -> Result<T> {
    let exact = oracle::exact_hyperfactorial_log::<T>(n)?;
    Ok(exact - hyperfactorial_main_term(n)?)
}
