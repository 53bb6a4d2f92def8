//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Iteration cap shared by the bracketed solvers in this crate.
pub const MAX_ITERATIONS: usize = 200;

/// Bisection on a sign change of `f` over `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        method: "bisection",
        iterations: MAX_ITERATIONS,
        lo,
        hi,
    })
}

/// Newton iteration safeguarded by a sign-change bracket.
///
/// `f` returns `(value, derivative)`. A Newton step that leaves the
/// current bracket, or fails to halve it, is replaced by a bisection step.
pub fn newton_bracketed<F>(mut f: F, mut lo: f64, mut hi: f64, start: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let lo_sign = f_lo.signum();
    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    let mut step = hi - lo;
    let mut previous_step = step;
    for _ in 0..MAX_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let slow = (2.0 * fx).abs() > (previous_step * dfx).abs();
        previous_step = step;
        if !(newton > lo && newton < hi) || slow {
            step = 0.5 * (hi - lo);
            x = lo + step;
        } else {
            step = x - newton;
            x = newton;
        }
        if step.abs() <= tol || hi - lo <= tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        method: "safeguarded Newton",
        iterations: MAX_ITERATIONS,
        lo,
        hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt_two() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((x - core::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn bisection_requires_sign_change() {
        let err = bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn newton_converges_from_poor_start() {
        let x = newton_bracketed(|x| (x * x * x - 8.0, 3.0 * x * x), 0.0, 10.0, 9.9, 1e-14).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn newton_with_flat_derivative_falls_back() {
        // derivative vanishes at the start point
        let x = newton_bracketed(|x| (x * x * x, 3.0 * x * x), -1.0, 2.0, 0.5, 1e-12).unwrap();
        assert!(x.abs() < 1e-4);
    }
}
