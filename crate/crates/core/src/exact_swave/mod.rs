//! Exact S-wave eigenvalues from the condition
//! `U(1 - v/(2√-E), 2, 2b√-E) = 0`.
//!
//! Roots are tracked in the effective quantum number `ν = v/(2√-E)`,
//! in which the hydrogenic bracket for the n-th level reads
//! `n <= ν <= n + λ`. The n-th root in energy order is found by counting
//! sign changes upward from `ν = 1`, refined by bisection and polished
//! with a finite-difference Newton step in `E`.

pub mod tricomi;

use libm::{ceil, sqrt};

use crate::envelope::coulomb_bounds;
use crate::error::{domain, Error, Result};
use crate::model::{lambda_eff, QuantumNumbers};
use crate::roots::{bisect, newton_bracketed};

pub use tricomi::{tricomi_u, u_integral, u_recurrence, UArguments};

/// Default energy tolerance for [`swave_exact`].
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SWaveRoot {
    pub n: u32,
    pub energy: f64,
    /// `|U|` at the returned energy.
    pub residual: f64,
    /// The hydrogenic interval `[-v²/(4n²), -v²/(4(n+λ)²)]`.
    pub bracket_used: (f64, f64),
}

/// The eigencondition as a function of energy.
pub fn eigencondition(v: f64, b: f64, energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(domain("eigencondition needs a negative energy", energy));
    }
    let kappa = sqrt(-energy);
    tricomi_u(UArguments::new(1.0 - v / (2.0 * kappa), 2.0 * b * kappa))
}

fn condition_in_nu(v: f64, b: f64, nu: f64) -> Result<f64> {
    tricomi_u(UArguments::new(1.0 - nu, b * v / nu))
}

fn energy_of_nu(v: f64, nu: f64) -> f64 {
    -v * v / (4.0 * nu * nu)
}

/// The n-th S-wave eigenvalue of `-Δ - v/(r+b)`, refined to `|ΔE| < tol`.
pub fn swave_exact(n: u32, v: f64, b: f64, tol: f64) -> Result<SWaveRoot> {
    let q = QuantumNumbers::new(n, 0)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain("coupling v must be positive", v));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(domain("exact S-wave condition needs b > 0", b));
    }
    if !(tol > 0.0) {
        return Err(domain("tolerance must be positive", tol));
    }
    let lambda = lambda_eff(0, v, b);
    let n_f = f64::from(n);
    let bracket_used = coulomb_bounds(q, v, b);

    // Without overlap (λ < 1) only the n-th root lies in [n, n + λ];
    // otherwise every lower root has to be counted from ν = 1.
    let (scan_lo, roots_below) = if lambda < 1.0 { (n_f, 0) } else { (1.0, n - 1) };
    let scan_hi = n_f + lambda;
    let step_target = (lambda / 16.0).min(1.0 / 32.0);
    let steps = ceil((scan_hi - scan_lo) / step_target).max(1.0) as usize;
    let step = (scan_hi - scan_lo) / steps as f64;

    let mut seen = 0u32;
    let mut prev_nu = scan_lo;
    let mut prev = condition_in_nu(v, b, prev_nu)?;
    let mut cell = None;
    if prev == 0.0 && roots_below == 0 {
        cell = Some((prev_nu, prev_nu));
    }
    if cell.is_none() {
        for i in 1..=steps {
            let nu = if i == steps { scan_hi } else { scan_lo + step * i as f64 };
            let value = condition_in_nu(v, b, nu)?;
            let crossed = value == 0.0 || (prev != 0.0 && value.signum() != prev.signum());
            if crossed {
                if seen == roots_below {
                    cell = Some(if value == 0.0 { (nu, nu) } else { (prev_nu, nu) });
                    break;
                }
                seen += 1;
            }
            prev_nu = nu;
            prev = value;
        }
    }

    let (nu_a, nu_b) = match cell {
        Some(c) => c,
        None => {
            return Err(Error::NoSignChange {
                lo: bracket_used.0,
                hi: bracket_used.1,
                f_lo: condition_in_nu(v, b, n_f)?,
                f_hi: condition_in_nu(v, b, scan_hi)?,
            })
        }
    };

    let energy = if nu_a == nu_b {
        energy_of_nu(v, nu_a)
    } else {
        refine(v, b, energy_of_nu(v, nu_a), energy_of_nu(v, nu_b), tol)?
    };

    let (lo, hi) = bracket_used;
    if !(energy > lo && energy < hi) {
        return Err(Error::BracketViolation { value: energy, lo, hi });
    }
    Ok(SWaveRoot {
        n,
        energy,
        residual: eigencondition(v, b, energy)?.abs(),
        bracket_used,
    })
}

fn refine(v: f64, b: f64, e_lo: f64, e_hi: f64, tol: f64) -> Result<f64> {
    let mut failure = None;
    let mut g = |e: f64| match eigencondition(v, b, e) {
        Ok(value) => value,
        Err(err) => {
            failure.get_or_insert(err);
            f64::NAN
        }
    };
    // coarse bisection, then Newton polish inside the narrowed interval
    let width = e_hi - e_lo;
    let coarse = bisect(&mut g, e_lo, e_hi, (1e-6 * width).max(tol))?;
    let half = (2e-6 * width).max(4.0 * tol);
    let lo = (coarse - half).max(e_lo);
    let hi = (coarse + half).min(e_hi);
    let (lo, hi) = if g(lo).signum() != g(hi).signum() {
        (lo, hi)
    } else {
        (e_lo, e_hi)
    };
    let root = newton_bracketed(
        |e| {
            let d = 1e-7 * e.abs();
            let derivative = (g(e + d) - g(e - d)) / (2.0 * d);
            (g(e), derivative)
        },
        lo,
        hi,
        coarse,
        tol,
    );
    match failure {
        Some(err) => Err(err),
        None => root,
    }
}
