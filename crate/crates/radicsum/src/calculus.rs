//! Numerical differentiation of φ with respect to r, the differentiated
//! identity check, and the two independent routes to ξ: the exact
//! log-factorial identity and extrapolation of `r² dφ/dr` as r → ∞.

use crate::closed_form;
use crate::oracle::{self, RootIndex};
use crate::{real, Error, Real, Result};

/// Default ladder for the r → ∞ extrapolation.
pub const DEFAULT_R_LADDER: [f64; 5] = [8.0, 16.0, 32.0, 64.0, 128.0];

/// Maximum allowed gap between successive limit extrapolants.
pub const DEFAULT_LIMIT_TOLERANCE: f64 = 1e-3;

/// Accuracy order of the central-difference stencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StencilOrder {
    Two,
    Four,
}

impl StencilOrder {
    /// Stencil half-width in units of the step.
    fn half_width(self) -> f64 {
        match self {
            StencilOrder::Two => 1.0,
            StencilOrder::Four => 2.0,
        }
    }

    fn accuracy(self) -> u32 {
        match self {
            StencilOrder::Two => 2,
            StencilOrder::Four => 4,
        }
    }
}

/// Finite-difference configuration: stencil order, largest step, and the
/// number of step halvings fed into Richardson extrapolation.
#[derive(Clone, Copy, Debug)]
pub struct DifferenceScheme<T> {
    pub order: StencilOrder,
    pub base_step: T,
    pub richardson_levels: u32,
}

impl<T: Real> DifferenceScheme<T> {
    /// Default scheme at a given r: order 2, `base_step = max(1e-4, 1e-6·r)`,
    /// two Richardson levels. φ carries ~1e-12 absolute noise from the
    /// oracle, so the step must stay well above the cancellation floor.
    pub fn for_r(r: T) -> Self {
        Self {
            order: StencilOrder::Two,
            base_step: real::<T>(1e-4).max(real::<T>(1e-6) * r),
            richardson_levels: 2,
        }
    }
}

impl<T: Real> Default for DifferenceScheme<T> {
    fn default() -> Self {
        Self::for_r(T::one())
    }
}

/// ξ_n computed two independent ways, with the per-rung limit diagnostics.
#[derive(Clone, Debug)]
pub struct XiEstimate<T> {
    pub n: u64,
    pub xi_identity: T,
    pub xi_limit: T,
    pub discrepancy: T,
    /// `(r, r² dφ/dr)` for each ladder rung, in ladder order.
    pub limit_diagnostics: Vec<(T, T)>,
}

/// Forward-difference cross-check of the Eq.-style identity at r = 1:
/// the derivative estimate, the hyperfactorial residual it must match,
/// and their absolute gap.
#[derive(Clone, Copy, Debug)]
pub struct ResidualCrossCheck<T> {
    pub derivative: T,
    pub residual: T,
    pub gap: T,
}

fn phi_at<T: Real>(n: u64, r: T) -> Result<T> {
    Ok(closed_form::phi(n, RootIndex::new(r)?)?.phi)
}

/// Richardson table over estimates at steps `h, h/2, h/4, ...` whose error
/// series starts at `h^leading_order` and advances by `h^order_step`.
fn richardson<T: Real>(estimates: &[T], leading_order: u32, order_step: u32) -> T {
    let mut table = estimates.to_vec();
    let m = table.len();
    for j in 1..m {
        let p = leading_order + (j as u32 - 1) * order_step;
        let f = real::<T>((2.0f64).powi(p as i32));
        for k in (j..m).rev() {
            table[k] = (f * table[k] - table[k - 1]) / (f - T::one());
        }
    }
    table[m - 1]
}

fn check_step<T: Real>(scheme: &DifferenceScheme<T>, r: T) -> Result<()> {
    let step = scheme.base_step;
    if !step.is_finite() || step <= T::zero() {
        return Err(Error::InvalidArgument("base_step must be positive".into()));
    }
    let smallest = step / real::<T>((2.0f64).powi(scheme.richardson_levels as i32));
    let floor = real::<T>(64.0) * T::epsilon() * r;
    if smallest < floor {
        return Err(Error::StepUnderflow {
            step: smallest.to_f64().unwrap_or(f64::NAN),
            floor: floor.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

fn central_difference<T: Real>(n: u64, r: T, h: T, order: StencilOrder) -> Result<T> {
    let two = real::<T>(2.0);
    match order {
        StencilOrder::Two => Ok((phi_at(n, r + h)? - phi_at(n, r - h)?) / (two * h)),
        StencilOrder::Four => {
            let eight = real::<T>(8.0);
            let num = phi_at(n, r - two * h)? - eight * phi_at(n, r - h)?
                + eight * phi_at(n, r + h)?
                - phi_at(n, r + two * h)?;
            Ok(num / (real::<T>(12.0) * h))
        }
    }
}

/// `dφ_n/dr` at r, central difference with Richardson extrapolation over
/// `richardson_levels` step halvings.
pub fn dphi_dr<T: Real>(n: u64, r: RootIndex<T>, scheme: &DifferenceScheme<T>) -> Result<T> {
    let rv = r.get();
    check_step(scheme, rv)?;
    let width = real::<T>(scheme.order.half_width()) * scheme.base_step;
    if rv - width < T::one() {
        return Err(Error::DomainBoundary {
            r: rv.to_f64().unwrap_or(f64::NAN),
            step: scheme.base_step.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut estimates = Vec::with_capacity(scheme.richardson_levels as usize + 1);
    let mut h = scheme.base_step;
    for _ in 0..=scheme.richardson_levels {
        estimates.push(central_difference(n, rv, h, scheme.order)?);
        h = h / real::<T>(2.0);
    }
    Ok(richardson(&estimates, scheme.order.accuracy(), 2))
}

/// `dφ_n/dr` at r = 1 via a one-sided (forward) second-order stencil,
/// Richardson-extrapolated, reported next to the hyperfactorial residual
/// it must equal.
pub fn dphi_dr_at_one<T: Real>(n: u64, scheme: &DifferenceScheme<T>) -> Result<ResidualCrossCheck<T>> {
    let one = T::one();
    check_step(scheme, one)?;
    let two = real::<T>(2.0);
    let phi_1 = phi_at(n, one)?;
    let mut estimates = Vec::with_capacity(scheme.richardson_levels as usize + 1);
    let mut h = scheme.base_step;
    for _ in 0..=scheme.richardson_levels {
        let d = (real::<T>(4.0) * phi_at(n, one + h)?
            - phi_at(n, one + two * h)?
            - real::<T>(3.0) * phi_1)
            / (two * h);
        estimates.push(d);
        h = h / two;
    }
    // one-sided stencil: error series h^2, h^3, h^4, ...
    let derivative = richardson(&estimates, 2, 1);
    let residual = closed_form::hyperfactorial_residual(n)?;
    Ok(ResidualCrossCheck {
        derivative,
        residual,
        gap: (derivative - residual).abs(),
    })
}

/// Signed residual `LHS - RHS` of the differentiated identity
/// `Σ i^(1/r) ln i = [r/(r+1)(n+1) - 1/2](n+1)^(1/r) ln(n+1)
///  - r²/(r+1)² (n+1)^((1+r)/r) + r² dφ/dr`.
pub fn verify_eq3<T: Real>(n: u64, r: RootIndex<T>, scheme: &DifferenceScheme<T>) -> Result<T> {
    let lhs = oracle::exact_weighted_log_sum(n, r)?;
    let rv = r.get();
    let one = T::one();
    let half = real::<T>(0.5);
    let np1 = T::from_u64(n + 1).unwrap();
    let deriv = dphi_dr(n, r, scheme)?;
    let rhs = (rv / (rv + one) * np1 - half) * np1.powf(one / rv) * np1.ln()
        - rv * rv / ((rv + one) * (rv + one)) * np1.powf((one + rv) / rv)
        + rv * rv * deriv;
    Ok(lhs - rhs)
}

/// ξ_n from the exact identity: `ln n! - (n + 1/2) ln(n+1) + (n+1)`.
pub fn xi_via_identity<T: Real>(n: u64) -> Result<T> {
    let log_fact = oracle::exact_log_factorial::<T>(n)?;
    let np1 = T::from_u64(n + 1).unwrap();
    Ok(log_fact - (T::from_u64(n).unwrap() + real::<T>(0.5)) * np1.ln() + np1)
}

/// ξ_n from the limit `lim_{r→∞} r² dφ/dr`, extrapolated from the ladder
/// by Neville polynomial extrapolation in 1/r. Non-convergence of the
/// extrapolants is an error, not a silent answer.
pub fn xi_via_limit<T: Real>(
    n: u64,
    r_ladder: &[T],
    scheme: &DifferenceScheme<T>,
) -> Result<XiEstimate<T>> {
    if r_ladder.is_empty() {
        return Err(Error::InvalidArgument("r_ladder must be non-empty".into()));
    }
    let two = real::<T>(2.0);
    for w in r_ladder.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidArgument(
                "r_ladder must be strictly ascending".into(),
            ));
        }
    }
    if r_ladder[0] < two {
        return Err(Error::InvalidArgument("r_ladder values must be >= 2".into()));
    }

    let mut diagnostics = Vec::with_capacity(r_ladder.len());
    let mut xs = Vec::with_capacity(r_ladder.len());
    for &rv in r_ladder {
        // keep the step floor proportional to r up the ladder
        let rung_scheme = DifferenceScheme {
            base_step: scheme.base_step.max(real::<T>(1e-6) * rv),
            ..*scheme
        };
        let g = rv * rv * dphi_dr(n, RootIndex::new(rv)?, &rung_scheme)?;
        diagnostics.push((rv, g));
        xs.push(T::one() / rv);
    }
    let ys: Vec<T> = diagnostics.iter().map(|&(_, g)| g).collect();
    let diag = neville_at_zero(&xs, &ys);
    let xi_limit = *diag.last().unwrap();
    if diag.len() >= 2 {
        let last_delta = (diag[diag.len() - 1] - diag[diag.len() - 2]).abs();
        let tol = real::<T>(DEFAULT_LIMIT_TOLERANCE);
        if last_delta > tol {
            return Err(Error::NonConvergence {
                last_delta: last_delta.to_f64().unwrap_or(f64::NAN),
                tolerance: DEFAULT_LIMIT_TOLERANCE,
            });
        }
    }
    let xi_identity = xi_via_identity(n)?;
    Ok(XiEstimate {
        n,
        xi_identity,
        xi_limit,
        discrepancy: (xi_identity - xi_limit).abs(),
        limit_diagnostics: diagnostics,
    })
}

/// Successive Neville extrapolants of `(xs, ys)` evaluated at x = 0;
/// entry k uses the first k+1 points.
fn neville_at_zero<T: Real>(xs: &[T], ys: &[T]) -> Vec<T> {
    let mut column: Vec<T> = Vec::with_capacity(xs.len());
    let mut diagonal = Vec::with_capacity(xs.len());
    for k in 0..xs.len() {
        column.push(ys[k]);
        for j in (0..k).rev() {
            column[j] = (xs[k] * column[j] - xs[j] * column[j + 1]) / (xs[k] - xs[j]);
        }
        diagonal.push(column[0]);
    }
    diagonal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r64(r: f64) -> RootIndex<f64> {
        RootIndex::new(r).unwrap()
    }

    #[test]
    fn dphi_dr_golden_value() {
        let d = dphi_dr(4, r64(2.0), &DifferenceScheme::for_r(2.0)).unwrap();
        assert!((d - 0.10702587012280318).abs() < 1e-8);
    }

    #[test]
    fn dphi_dr_nonnegative_on_grid() {
        for n in [1u64, 5, 25, 100] {
            for r in [1.5f64, 2.0, 3.0, 8.0, 32.0] {
                let d = dphi_dr(n, r64(r), &DifferenceScheme::for_r(r)).unwrap();
                assert!(d >= -1e-8, "dphi_dr({n}, {r}) = {d}");
            }
        }
    }

    #[test]
    fn central_stencil_rejects_boundary_crossing() {
        let scheme = DifferenceScheme {
            order: StencilOrder::Two,
            base_step: 1e-4,
            richardson_levels: 2,
        };
        assert!(matches!(
            dphi_dr(1, r64(1.0), &scheme),
            Err(Error::DomainBoundary { .. })
        ));
    }

    #[test]
    fn step_underflow_detected() {
        let scheme = DifferenceScheme {
            order: StencilOrder::Two,
            base_step: 1e-15,
            richardson_levels: 2,
        };
        assert!(matches!(
            dphi_dr(4, r64(2.0), &scheme),
            Err(Error::StepUnderflow { .. })
        ));
    }

    #[test]
    fn step_halving_converges_at_expected_rate() {
        // raw order-2 differences against a heavily extrapolated reference
        let refined = dphi_dr(
            10,
            r64(2.0),
            &DifferenceScheme {
                order: StencilOrder::Two,
                base_step: 1e-3,
                richardson_levels: 4,
            },
        )
        .unwrap();
        let raw = |h: f64| {
            let p = |r: f64| closed_form::phi(10, r64(r)).unwrap().phi;
            (p(2.0 + h) - p(2.0 - h)) / (2.0 * h)
        };
        let e1 = (raw(1e-2) - refined).abs();
        let e2 = (raw(5e-3) - refined).abs();
        assert!(e1 / e2 >= 3.0, "halving ratio {}", e1 / e2);
    }

    #[test]
    fn fourth_order_stencil_agrees_with_second() {
        let d2 = dphi_dr(10, r64(3.0), &DifferenceScheme::for_r(3.0)).unwrap();
        let d4 = dphi_dr(
            10,
            r64(3.0),
            &DifferenceScheme {
                order: StencilOrder::Four,
                base_step: 1e-3,
                richardson_levels: 1,
            },
        )
        .unwrap();
        assert!((d2 - d4).abs() < 1e-8);
    }

    #[test]
    fn derivative_at_one_matches_hyperfactorial_residual() {
        for (n, expected) in [
            (1u64, 0.306_852_819_440_054_7_f64),
            (2, 0.34045749511556154),
            (10, 0.44859054802454597),
        ] {
            let check = dphi_dr_at_one(n, &DifferenceScheme::<f64>::default()).unwrap();
            assert!((check.residual - expected).abs() < 1e-10);
            assert!(check.gap < 1e-4, "gap at n = {n}: {}", check.gap);
        }
    }

    #[test]
    fn eq3_residual_small() {
        for (n, r) in [(10u64, 2.0f64), (1, 3.0), (100, 1.5)] {
            let res = verify_eq3(n, r64(r), &DifferenceScheme::for_r(r)).unwrap();
            let lhs: f64 = oracle::exact_weighted_log_sum(n, r64(r)).unwrap();
            assert!(
                res.abs() <= 1e-6 * lhs.abs().max(1.0),
                "residual at ({n}, {r}): {res}"
            );
        }
    }

    #[test]
    fn xi_identity_golden_values() {
        let x1: f64 = xi_via_identity(1).unwrap();
        assert!((x1 - 0.960_279_229_160_082).abs() < 1e-14);
        let x10: f64 = xi_via_identity(10).unwrap();
        assert!((x10 - 0.926_512_208_692_624_6).abs() < 1e-12);
        let x1e4: f64 = xi_via_identity(10_000).unwrap();
        assert!((x1e4.exp() - crate::SQRT_2PI).abs() < 2.2e-5);
    }

    #[test]
    fn xi_two_routes_agree() {
        let ladder = DEFAULT_R_LADDER;
        for n in [1u64, 10, 100] {
            let est = xi_via_limit(n, &ladder, &DifferenceScheme::default()).unwrap();
            assert!(est.discrepancy <= 1e-3, "n = {n}: {}", est.discrepancy);
            assert_eq!(est.limit_diagnostics.len(), ladder.len());
        }
        let est = xi_via_limit(10, &ladder, &DifferenceScheme::default()).unwrap();
        assert!((est.xi_limit - 0.9265).abs() < 1e-3);
    }

    #[test]
    fn xi_ladder_validation() {
        let scheme = DifferenceScheme::default();
        assert!(xi_via_limit::<f64>(10, &[], &scheme).is_err());
        assert!(xi_via_limit(10, &[8.0, 8.0], &scheme).is_err());
        assert!(xi_via_limit(10, &[1.5, 8.0], &scheme).is_err());
    }

    #[test]
    fn neville_extrapolates_polynomials_exactly() {
        // y = 3 - 2x + x^2 sampled away from 0 must give 3 at x = 0
        let xs = [0.5f64, 0.25, 0.125, 0.0625];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x + x * x).collect();
        let diag = neville_at_zero(&xs, &ys);
        assert!((diag.last().unwrap() - 3.0).abs() < 1e-12);
    }
}
