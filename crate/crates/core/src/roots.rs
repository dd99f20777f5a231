//! Bracketed bisection for monotone scalar functions.

use crate::error::{Error, Result};

/// Finds a root of `f` in `[lo, hi]` by bisection.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them must be zero).
/// Iteration stops once `|f(mid)| < ftol` or the bracket can no longer shrink in
/// floating point.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, ftol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::Internal(format!(
            "root not bracketed on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if fm.abs() < ftol && hi - lo < 1e-15 * mid.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans `[lo, hi]` in `steps` equal pieces and bisects the first sign change.
pub fn scan_and_bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, steps: usize, ftol: f64) -> Result<f64> {
    let h = (hi - lo) / steps as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = lo + h * i as f64;
        let fb = f(b);
        if fa == 0.0 || fa.signum() != fb.signum() {
            return bisect(&f, a, b, ftol);
        }
        a = b;
        fa = fb;
    }
    Err(Error::Internal(format!("no sign change of f on [{lo}, {hi}]")))
}
