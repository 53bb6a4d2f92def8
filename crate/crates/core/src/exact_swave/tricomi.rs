//! Tricomi's confluent hypergeometric function `U(x, 2, z)` for `z > 0`.
//!
//! Three evaluation paths, none of which expands around `z = 0`:
//!
//! * terminating series when `x` is an integer `<= 1` (the `₂F₀` form
//!   truncates and `U` is a polynomial in `z` times a power of `z`);
//! * the Laplace-type integral for `x >= 1`, rewritten with `t = s/z` as
//!   `U = (1/(z Γ(x))) ∫₀^∞ e^{-s} (s/(s+z))^{x-1} ds`;
//! * the contiguous recurrence in `x`, run downward from two integral
//!   seeds, for everything else.

use alloc::vec::Vec;
use libm::{pow, tgamma};

use crate::error::{domain, Result};
use crate::quadrature::integrate;

/// Arguments of `U(x, y, z)`. Only `y = 2` is supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UArguments {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UArguments {
    pub fn new(x: f64, z: f64) -> Self {
        Self { x, y: 2.0, z }
    }
}

const QUAD_REL_TOL: f64 = 1e-13;

pub fn tricomi_u(args: UArguments) -> Result<f64> {
    if args.y != 2.0 {
        return Err(domain("only U(x, 2, z) is supported", args.y));
    }
    let UArguments { x, z, .. } = args;
    check_z(z)?;
    if !x.is_finite() {
        return Err(domain("first parameter must be finite", x));
    }
    if let Some(m) = terminating_order(x) {
        Ok(u_terminating(m, z))
    } else if x >= 1.0 {
        u_integral(x, z)
    } else {
        u_recurrence(x, z)
    }
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(domain("argument z must be positive and finite", z))
    }
}

/// `Some(m)` when `x = 1 - m` is an integer `<= 1` (so `m >= 0`).
fn terminating_order(x: f64) -> Option<u32> {
    if x <= 1.0 && x == libm::floor(x) && x > -1e6 {
        Some((1.0 - x) as u32)
    } else {
        None
    }
}

/// `U(1-m, 2, z)`, a terminating `₂F₀`. For `m = 0` this is `1/z`;
/// otherwise `z^{m-1} Σ_k (1-m)_k (-m)_k / k! (-1/z)^k`.
fn u_terminating(m: u32, z: f64) -> f64 {
    if m == 0 {
        return 1.0 / z;
    }
    let a = 1.0 - f64::from(m);
    let c = a - 1.0;
    // Horner in 1/z over the m terms k = 0..m-1 (term k = m vanishes via (1-m)_m).
    let terms = m as usize;
    let mut coeffs = Vec::with_capacity(terms);
    let mut t = 1.0;
    for k in 0..terms {
        coeffs.push(t);
        let kf = k as f64;
        t *= -((a + kf) * (c + kf) / (kf + 1.0));
    }
    let inv = 1.0 / z;
    let mut sum = 0.0;
    for &ck in coeffs.iter().rev() {
        sum = sum * inv + ck;
    }
    sum * pow(z, f64::from(m) - 1.0)
}

/// Integral representation, valid for `x > 0`.
pub fn u_integral(x: f64, z: f64) -> Result<f64> {
    check_z(z)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("integral representation needs x > 0", x));
    }
    let split = if z < 1.0 { z } else { 1.0 };
    let upper = 80.0 + 4.0 * x;
    let power = x - 1.0;
    let tail = integrate(
        |s| libm::exp(-s) * pow(s / (s + z), power),
        split,
        upper,
        1e-300,
        QUAD_REL_TOL,
    )?;
    let head = if x < 1.0 {
        // s = split·u^{1/x} removes the s^{x-1} singularity:
        // ∫₀^c s^{x-1}(s+z)^{1-x} e^{-s} ds = (c^x/x) ∫₀¹ (s+z)^{1-x} e^{-s} du
        let inv_x = 1.0 / x;
        let inner = integrate(
            |u| {
                let s = split * pow(u, inv_x);
                pow(s + z, -power) * libm::exp(-s)
            },
            0.0,
            1.0,
            1e-300,
            QUAD_REL_TOL,
        )?;
        inner.value * pow(split, x) / x
    } else {
        integrate(
            |s| libm::exp(-s) * pow(s / (s + z), power),
            0.0,
            split,
            1e-300,
            QUAD_REL_TOL,
        )?
        .value
    };
    Ok((head + tail.value) / (z * tgamma(x)))
}

/// Downward recurrence `U(a-1) = (z + 2a - 2) U(a) - a(a-1) U(a+1)`
/// from integral seeds at `x + k` and `x + k + 1`, with `k >= 1` the
/// smallest shift putting `x + k >= 1`.
pub fn u_recurrence(x: f64, z: f64) -> Result<f64> {
    check_z(z)?;
    if !x.is_finite() {
        return Err(domain("first parameter must be finite", x));
    }
    let shift = if x < 1.0 { libm::ceil(1.0 - x).max(1.0) } else { 1.0 };
    let steps = shift as u32;
    let top = x + shift;
    let mut upper = u_integral(top + 1.0, z)?;
    let mut current = u_integral(top, z)?;
    for j in (1..=steps).rev() {
        let a = x + f64::from(j);
        let below = (z + 2.0 * a - 2.0) * current - a * (a - 1.0) * upper;
        upper = current;
        current = below;
    }
    Ok(current)
}
