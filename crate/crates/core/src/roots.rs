//! Bracketing bisection.

use crate::error::Result;

const MAX_ITER: usize = 200;

/// Shrinks `[lo, hi]` around a sign change of `f` until `hi - lo < tol`.
///
/// `f_lo` is `f(lo)`; the sign of `f(hi)` is assumed opposite. Returns the
/// final bracket, which keeps the sign change.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let lo_positive = f_lo > 0.0;
    for _ in 0..MAX_ITER {
        if hi - lo < tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid)? > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let (lo, hi) = bisect(|x| Ok(x * x - 2.0), 1.0, 2.0, -1.0, 1e-12).unwrap();
        assert!(hi - lo < 1e-12);
        assert!((0.5 * (lo + hi) - 2f64.sqrt()).abs() < 1e-12);
        // decreasing function
        let (lo, hi) = bisect(|x| Ok(2.0 - x * x), 1.0, 2.0, 1.0, 1e-12).unwrap();
        assert!((0.5 * (lo + hi) - 2f64.sqrt()).abs() < 1e-12);
    }
}
