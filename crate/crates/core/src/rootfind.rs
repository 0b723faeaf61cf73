//! Bracketing root finding and one-dimensional minimization.

use crate::error::{Error, Result};

/// Bisection on [lo, hi]; requires a sign change. Returns the midpoint of
/// the final bracket once its width falls below `tol_x`.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut lo: f64,
    mut hi: f64,
    tol_x: f64,
    mut f: F,
) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBalancedPoint { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() < tol_x {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a local minimum of `f` on [lo, hi].
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut lo: f64,
    mut hi: f64,
    tol_x: f64,
    mut f: F,
) -> f64 {
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..400 {
        if (hi - lo).abs() < tol_x {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
