//! Sign-bracketed bisection on the positive half-line.

use crate::error::{Error, Result};

/// Relative bracket width at which bisection stops.
pub const REL_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 200;

/// Bisects `f` on `[lo, hi]` with `0 < lo < hi`, taking geometric midpoints
/// so that brackets spanning many decades converge as fast as narrow ones.
///
/// `f(lo)` and `f(hi)` must have opposite signs.
pub fn bisect_log<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::NumericFailure(format!(
            "invalid bracket [{lo}, {hi}]"
        )));
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::NumericFailure(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    for _ in 0..MAX_ITER {
        let mid = lo.sqrt() * hi.sqrt();
        if hi / lo - 1.0 < REL_TOL || mid <= lo || mid >= hi {
            return Ok(mid.clamp(lo, hi));
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.is_nan() {
            return Err(Error::NumericFailure(format!("NaN at l = {mid}")));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NumericFailure(format!(
        "bisection did not converge in {MAX_ITER} iterations (bracket [{lo}, {hi}])"
    )))
}

/// Moves `start` outward by repeated squaring of the step factor until
/// `pred` holds. Upward when `up`, downward otherwise.
pub fn expand_until<P: Fn(f64) -> bool>(pred: P, start: f64, up: bool) -> Result<f64> {
    let mut factor = 2.0f64;
    let mut x = start;
    for _ in 0..64 {
        if pred(x) {
            return Ok(x);
        }
        x = if up { start * factor } else { start / factor };
        if x == 0.0 || !x.is_finite() {
            break;
        }
        factor = factor * factor;
        if !factor.is_finite() {
            factor = f64::MAX;
        }
    }
    Err(Error::NumericFailure(format!(
        "could not bracket a sign change {} from {start}",
        if up { "above" } else { "below" }
    )))
}
