//! Brute-force ground truth: every sum in the closed-form analysis,
//! evaluated term by term with compensated (Neumaier) summation so the
//! accumulated rounding error stays near machine epsilon even at
//! n = 10^8.

use crate::{Error, Real, Result};

/// Default upper bound on `n` for the O(n) oracles.
pub const DEFAULT_N_CAP: u64 = 1_000_000_000;

/// Environment variable overriding [`DEFAULT_N_CAP`].
pub const N_CAP_ENV: &str = "RADICSUM_N_CAP";

/// Current oracle cap, taken from `RADICSUM_N_CAP` when set and parseable.
pub fn oracle_cap() -> u64 {
    std::env::var(N_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_N_CAP)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let cap = oracle_cap();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Validated root exponent: a finite real `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct RootIndex<T>(T);

impl<T: Real> RootIndex<T> {
    pub fn new(r: T) -> Result<Self> {
        if r.is_finite() && r >= T::one() {
            Ok(Self(r))
        } else {
            Err(Error::InvalidRootIndex {
                r: r.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// Neumaier-compensated accumulator. The final sum is independent of the
/// addition order up to ~2 ulp per operand, regardless of the term count.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedAccumulator<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> CompensatedAccumulator<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        let c = if self.sum.abs() >= value.abs() {
            (self.sum - t) + value
        } else {
            (value - t) + self.sum
        };
        self.compensation = self.compensation + c;
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> T {
        self.sum + self.compensation
    }
}

/// `i^(1/r)`, computed as `exp(ln(i)/r)` for i >= 2 and exactly 1 for i = 1.
#[inline]
pub fn root_term<T: Real>(i: u64, r: T) -> T {
    if i == 1 {
        T::one()
    } else {
        (T::from_u64(i).unwrap().ln() / r).exp()
    }
}

fn finite_or_overflow<T: Real>(value: T, context: &str) -> Result<T> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            context: context.to_string(),
        })
    }
}

/// `Σ_{i=1..n} i^(1/r)`, terms added ascending.
pub fn exact_root_sum<T: Real>(n: u64, r: RootIndex<T>) -> Result<T> {
    check_n(n)?;
    let r = r.get();
    let mut acc = CompensatedAccumulator::new();
    for i in 1..=n {
        acc.add(root_term(i, r));
    }
    finite_or_overflow(acc.total(), &format!("summing i^(1/r) up to n = {n}"))
}

/// Same sum with terms added descending; exists so callers can check the
/// order-independence of the compensated accumulator.
pub fn exact_root_sum_descending<T: Real>(n: u64, r: RootIndex<T>) -> Result<T> {
    check_n(n)?;
    let r = r.get();
    let mut acc = CompensatedAccumulator::new();
    for i in (1..=n).rev() {
        acc.add(root_term(i, r));
    }
    finite_or_overflow(acc.total(), &format!("summing i^(1/r) up to n = {n}"))
}

/// `ln n! = Σ_{i=1..n} ln i`.
pub fn exact_log_factorial<T: Real>(n: u64) -> Result<T> {
    check_n(n)?;
    let mut acc = CompensatedAccumulator::new();
    for i in 2..=n {
        acc.add(T::from_u64(i).unwrap().ln());
    }
    Ok(acc.total())
}

/// `Σ_{i=1..n} i^(1/r) · ln i`.
pub fn exact_weighted_log_sum<T: Real>(n: u64, r: RootIndex<T>) -> Result<T> {
    check_n(n)?;
    let r = r.get();
    let mut acc = CompensatedAccumulator::new();
    for i in 2..=n {
        let ln_i = T::from_u64(i).unwrap().ln();
        acc.add(root_term(i, r) * ln_i);
    }
    finite_or_overflow(
        acc.total(),
        &format!("summing i^(1/r) ln i up to n = {n}"),
    )
}

/// `ln H(n) = Σ_{i=1..n} i · ln i`, the log of the hyperfactorial.
pub fn exact_hyperfactorial_log<T: Real>(n: u64) -> Result<T> {
    check_n(n)?;
    let mut acc = CompensatedAccumulator::new();
    for i in 2..=n {
        let i_t = T::from_u64(i).unwrap();
        acc.add(i_t * i_t.ln());
    }
    Ok(acc.total())
}

/// Lower sum, upper sum, and integral of `x^(1/r)` on the unit-width
/// partition of `[0, n]`.
#[derive(Clone, Copy, Debug)]
pub struct RiemannPartitionSums<T> {
    /// `L = Σ_{i=0..n-1} i^(1/r)`
    pub lower: T,
    /// `U = Σ_{i=1..n} i^(1/r)`
    pub upper: T,
    /// `I = r/(r+1) · n^((1+r)/r)`
    pub integral: T,
}

/// The sandwich `L <= I <= U`; `L` and `U` are summed independently so
/// the telescoping relation `U - L = n^(1/r)` is a real check.
pub fn riemann_bounds<T: Real>(n: u64, r: RootIndex<T>) -> Result<RiemannPartitionSums<T>> {
    check_n(n)?;
    let rv = r.get();
    let upper = exact_root_sum(n, r)?;
    let mut acc = CompensatedAccumulator::new();
    for i in 1..n {
        acc.add(root_term(i, rv));
    }
    let lower = finite_or_overflow(acc.total(), &format!("lower Riemann sum up to n = {n}"))?;
    let n_t = T::from_u64(n).unwrap();
    let integral = rv / (rv + T::one()) * n_t.powf((T::one() + rv) / rv);
    finite_or_overflow(integral, &format!("integral of x^(1/r) over [0, {n}]"))?;
    Ok(RiemannPartitionSums {
        lower,
        upper,
        integral,
    })
}
