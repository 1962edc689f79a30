//! Scaled complex arithmetic and the incomplete-gamma family.
//!
//! Everything downstream — kernel values, truncation radii, frame weights —
//! reduces to the regularized incomplete gamma pair
//! `P(a, x) = gamma(a, x) / Gamma(a)` and `Q(a, x) = Gamma(a, x) / Gamma(a)`,
//! plus the central-limit behaviour of `Q(a, a + tau sqrt(a))`. Three
//! independent evaluation routes are kept deliberately distinct so they can
//! cross-check each other in the tests: the lower-tail series, the
//! upper-tail continued fraction, and (for integer order) the truncated
//! exponential sum.

mod gamma;
mod scaled;

pub use gamma::{
    log_factorial, regularized_gamma, truncated_exp_ratio, GammaMethod, RegGammaValue,
};
pub use scaled::ScaledComplex;

pub(crate) use gamma::scaled_exp_partial_sum;
pub(crate) use scaled::wrap_phase;

use crate::error::{Error, Result};
use crate::real::{lit, Real};

/// The complementary error function `erfc(y) = (2/sqrt(pi)) int_y^inf
/// e^{-t^2} dt`, evaluated through `Q(1/2, y^2)` for `y >= 0` and by the
/// reflection `erfc(-y) = 2 - erfc(y)` below zero.
pub fn erfc<T: Real>(y: T) -> T {
    if y < T::zero() {
        return lit::<T>(2.0) - erfc(-y);
    }
    let y2 = y * y;
    if !y2.is_finite() {
        // Saturated argument: the tail is far below the underflow threshold.
        return T::zero();
    }
    regularized_gamma(lit::<T>(0.5), y2)
        .expect("erfc arguments are inside the gamma domain")
        .q
}

/// Measured agreement between `Q(a, a + tau sqrt(a))` and its central-limit
/// value `erfc(tau / sqrt(2)) / 2`, together with the first-order error
/// budget the agreement is judged against.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AsymptoticGap<T> {
    /// `Q(a, a + tau sqrt(a))`.
    pub q: T,
    /// `erfc(tau / sqrt(2)) / 2`.
    pub limit: T,
    /// `|q - limit|`.
    pub gap: T,
    /// `2 (|tau^2 - 1| / 3 + 1) e^{-tau^2 / 2} / sqrt(2 pi a)` — twice the
    /// magnitude of the first correction term, with a unit of slack for the
    /// orders beyond it.
    pub bound: T,
    /// Whether `gap <= bound`.
    pub pass: bool,
}

/// Checks the central-limit expansion of the upper tail at order `a` and
/// offset `tau`: the defect `Q(a, a + tau sqrt(a)) - erfc(tau / sqrt(2)) / 2`
/// must lie within twice the first correction term. Requires `a >= 10` and a
/// nonnegative cutoff.
pub fn asymptotic_gap_check<T: Real>(a: T, tau: T) -> Result<AsymptoticGap<T>> {
    if !(a.is_finite() && a >= lit::<T>(10.0)) {
        return Err(Error::Domain(format!(
            "asymptotic gap check requires a >= 10, got a = {a}"
        )));
    }
    let x = a + tau * a.sqrt();
    if !(x.is_finite() && x >= T::zero()) {
        return Err(Error::Domain(format!(
            "asymptotic gap check requires a + tau sqrt(a) >= 0, got {x}"
        )));
    }
    let q = regularized_gamma(a, x)?.q;
    let half = lit::<T>(0.5);
    let limit = half * erfc(tau / lit::<T>(2.0).sqrt());
    let gap = (q - limit).abs();
    let tau2 = tau * tau;
    let coeff = (tau2 - T::one()).abs() / lit::<T>(3.0) + T::one();
    let bound = lit::<T>(2.0) * coeff * (-tau2 * half).exp()
        / (lit::<T>(2.0) * T::PI() * a).sqrt();
    let pass = gap <= bound;
    Ok(AsymptoticGap {
        q,
        limit,
        gap,
        bound,
        pass,
    })
}
