//! Independent radial eigenvalue solver.
//!
//! Solves `-u'' + [ℓ(ℓ+1)/r² + V(r)] u = E u`, `u(0) = 0`, `u(r_max) = 0`
//! on a uniform grid by Numerov shooting. The n-th eigenvalue is located
//! by bisection on the node count of the outward solution (Sturm
//! oscillation: the count equals the number of eigenvalues below `E`).
//!
//! The centrifugal term is never evaluated at `r = 0`. Integration starts
//! at a tiny radius from the series `u ≈ r^{ℓ+1}(1 + c₁r)` and is carried
//! to the first few grid points with geometric-step RK4; Numerov takes
//! over once `h²ℓ(ℓ+1)/r²` is small.

use alloc::vec;
use alloc::vec::Vec;
use libm::{cbrt, ceil, sqrt};

use crate::envelope::coulomb_bounds;
use crate::error::{domain, Error, Result};
use crate::model::{lambda_eff, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub r_max: f64,
    pub grid_points: usize,
    /// Relative width at which the energy bisection stops.
    pub energy_tol: f64,
    pub max_iterations: usize,
}

const MIN_GRID_POINTS: usize = 1000;
const MAX_DEFAULT_GRID_POINTS: usize = 2_000_000;
const DEFAULT_ENERGY_TOL: f64 = 1e-13;
const DEFAULT_MAX_ITERATIONS: usize = 200;

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(domain("r_max must be positive", self.r_max));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(domain("grid_points must be at least 1000", self.grid_points as f64));
        }
        if !(self.energy_tol > 0.0) {
            return Err(domain("energy_tol must be positive", self.energy_tol));
        }
        if self.max_iterations == 0 {
            return Err(domain("max_iterations must be positive", 0.0));
        }
        Ok(())
    }

    /// Defaults for `-Δ - v/(r+b)`: `r_max = max(50, 30(n+λ)²/v)` and a
    /// step of `0.01·min(1, 1/v)`.
    pub fn cutoff_coulomb(q: QuantumNumbers, v: f64, b: f64) -> Self {
        let n_lambda = f64::from(q.n()) + lambda_eff(q.ell(), v, b);
        let r_max = (30.0 * n_lambda * n_lambda / v).max(50.0);
        let step = 0.01 * (1.0 / v).min(1.0);
        Self::with_step(r_max, step)
    }

    /// Defaults for `-Δ + r`: `r_max = max(30, 10·ℰ_est)` with `ℰ_est` the
    /// harmonic-basis upper estimate, step `0.01`.
    pub fn linear(q: QuantumNumbers) -> Self {
        let (_, upper) = linear_estimates(q);
        Self::with_step((10.0 * upper).max(30.0), 0.01)
    }

    fn with_step(r_max: f64, step: f64) -> Self {
        let points = (ceil(r_max / step) as usize).clamp(4 * MIN_GRID_POINTS, MAX_DEFAULT_GRID_POINTS);
        Self {
            r_max,
            grid_points: points,
            energy_tol: DEFAULT_ENERGY_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }

    pub fn with_grid_points(self, grid_points: usize) -> Self {
        Self { grid_points, ..self }
    }

    pub fn with_r_max(self, r_max: f64) -> Self {
        Self { r_max, ..self }
    }

    pub fn step(&self) -> f64 {
        self.r_max / self.grid_points as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub energy: f64,
    pub node_count: u32,
    /// `u(r_i)` at `r_i = i·step`, `i = 0..=grid_points`, normalized to
    /// `∫u² dr = 1`.
    pub wavefunction: Vec<f64>,
    pub step: f64,
    pub converged: bool,
}

impl RadialSolution {
    pub fn radius(&self, index: usize) -> f64 {
        index as f64 * self.step
    }
}

/// Radial potential without the centrifugal term.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Potential {
    CutoffCoulomb { v: f64, b: f64 },
    Linear,
}

impl Potential {
    fn value(self, r: f64) -> f64 {
        match self {
            Potential::CutoffCoulomb { v, b } => -v / (r + b),
            Potential::Linear => r,
        }
    }

    /// `c` in `V(r) ≈ -c/r` near the origin (zero for regular potentials).
    fn coulomb_strength(self) -> f64 {
        match self {
            Potential::CutoffCoulomb { v, b: 0.0 } => v,
            _ => 0.0,
        }
    }

    /// Length below which the two-term origin series is accurate.
    fn origin_scale(self) -> f64 {
        match self {
            Potential::CutoffCoulomb { v, b } if b > 0.0 => b.min(1.0 / v),
            Potential::CutoffCoulomb { v, .. } => 1.0 / v,
            Potential::Linear => 1.0,
        }
    }
}

/// Precomputed `ℓ(ℓ+1)/r² + V(r)` on the grid.
struct Shooter {
    potential: Potential,
    ell: f64,
    l2: f64,
    step: f64,
    base: Vec<f64>,
    /// First index integrated by Numerov; earlier points come from RK4.
    numerov_start: usize,
}

const RESCALE_THRESHOLD: f64 = 1e150;

impl Shooter {
    fn new(potential: Potential, ell: u32, config: &SolverConfig) -> Self {
        let n = config.grid_points;
        let step = config.step();
        let ell_f = f64::from(ell);
        let l2 = ell_f * (ell_f + 1.0);
        let mut base = vec![0.0; n + 1];
        for (i, slot) in base.iter_mut().enumerate().skip(1) {
            let r = i as f64 * step;
            *slot = l2 / (r * r) + potential.value(r);
        }
        // Numerov needs h²·ℓ(ℓ+1)/r² well below 12
        let numerov_start = 4 * (ell as usize + 1);
        Self {
            potential,
            ell: ell_f,
            l2,
            step,
            base,
            numerov_start,
        }
    }

    fn len(&self) -> usize {
        self.base.len()
    }

    fn rhs(&self, r: f64, energy: f64) -> f64 {
        self.l2 / (r * r) + self.potential.value(r) - energy
    }

    /// `u` at grid indices `1..=numerov_start`, from the origin series and RK4.
    fn start(&self, energy: f64, out: &mut [f64]) {
        let c1 = -self.potential.coulomb_strength() / (2.0 * (self.ell + 1.0));
        let r0 = 1e-4 * self.step.min(self.potential.origin_scale());
        // u scaled by r0^{ℓ+1}
        let mut r = r0;
        let mut u = 1.0 + c1 * r0;
        let mut du = (self.ell + 1.0) / r0 * (1.0 + c1 * r0) + c1;

        let target = self.step;
        while r < target {
            let dr = (r / 64.0).min(target - r);
            rk4(self, energy, &mut r, &mut u, &mut du, dr);
            let scale = u.abs();
            if scale > RESCALE_THRESHOLD {
                u /= scale;
                du /= scale;
            }
        }
        r = target;
        out[1] = u;
        for slot in out.iter_mut().take(self.numerov_start + 1).skip(2) {
            let dr = self.step / 16.0;
            for _ in 0..16 {
                rk4(self, energy, &mut r, &mut u, &mut du, dr);
            }
            *slot = u;
        }
    }

    /// Outward integration over the whole grid; returns the node count.
    fn count_nodes(&self, energy: f64) -> u32 {
        let mut head = vec![0.0; self.numerov_start + 1];
        self.start(energy, &mut head);
        let mut nodes = 0u32;
        let mut sign = head[1].signum();
        for &value in &head[2..] {
            if value != 0.0 && value.signum() != sign {
                nodes += 1;
                sign = value.signum();
            }
        }
        let h2 = self.step * self.step / 12.0;
        let last = self.len() - 1;
        let mut i = self.numerov_start;
        let mut prev = head[i - 1];
        let mut cur = head[i];
        let mut w_prev = 1.0 - h2 * (self.base[i - 1] - energy);
        let mut w_cur = 1.0 - h2 * (self.base[i] - energy);
        while i < last {
            let w_next = 1.0 - h2 * (self.base[i + 1] - energy);
            let next = ((12.0 - 10.0 * w_cur) * cur - w_prev * prev) / w_next;
            if next != 0.0 && next.signum() != sign {
                nodes += 1;
                sign = next.signum();
            }
            prev = cur;
            cur = next;
            w_prev = w_cur;
            w_cur = w_next;
            let scale = cur.abs();
            if scale > RESCALE_THRESHOLD {
                prev /= scale;
                cur /= scale;
            }
            i += 1;
        }
        nodes
    }

    /// Outward to the outer turning point, inward from `r_max`, matched in
    /// value; normalized.
    fn wavefunction(&self, energy: f64) -> Vec<f64> {
        let n = self.len();
        let last = n - 1;
        let mut u = vec![0.0; n];
        let h2 = self.step * self.step / 12.0;
        let w = |i: usize| 1.0 - h2 * (self.base[i] - energy);

        let turning = (1..n).rev().find(|&i| self.base[i] < energy).unwrap_or(last / 2);
        let matching = turning.clamp(self.numerov_start + 2, last - 2);

        self.start(energy, &mut u[..=self.numerov_start]);
        for i in self.numerov_start..matching {
            u[i + 1] = ((12.0 - 10.0 * w(i)) * u[i] - w(i - 1) * u[i - 1]) / w(i + 1);
            let scale = u[i + 1].abs();
            if scale > RESCALE_THRESHOLD {
                u[..=i + 1].iter_mut().for_each(|x| *x /= scale);
            }
        }
        let outward_at_match = u[matching];

        let mut inward = vec![0.0; n];
        inward[last] = 0.0;
        inward[last - 1] = 1e-300_f64.max(f64::MIN_POSITIVE * 1e10);
        for i in (matching + 1..last).rev() {
            inward[i - 1] = ((12.0 - 10.0 * w(i)) * inward[i] - w(i + 1) * inward[i + 1]) / w(i - 1);
            let scale = inward[i - 1].abs();
            if scale > RESCALE_THRESHOLD {
                inward[i - 1..].iter_mut().for_each(|x| *x /= scale);
            }
        }
        let ratio = outward_at_match / inward[matching];
        for i in matching + 1..n {
            u[i] = inward[i] * ratio;
        }

        let norm: f64 = u.iter().map(|x| x * x).sum::<f64>() * self.step;
        let norm = sqrt(norm);
        let sign = if u[1] < 0.0 { -1.0 } else { 1.0 };
        u.iter_mut().for_each(|x| *x *= sign / norm);
        u
    }
}

fn rk4(s: &Shooter, energy: f64, r: &mut f64, u: &mut f64, du: &mut f64, dr: f64) {
    let f = |r: f64, u: f64| s.rhs(r, energy) * u;
    let (r0, u0, d0) = (*r, *u, *du);
    let k1u = d0;
    let k1d = f(r0, u0);
    let k2u = d0 + 0.5 * dr * k1d;
    let k2d = f(r0 + 0.5 * dr, u0 + 0.5 * dr * k1u);
    let k3u = d0 + 0.5 * dr * k2d;
    let k3d = f(r0 + 0.5 * dr, u0 + 0.5 * dr * k2u);
    let k4u = d0 + dr * k3d;
    let k4d = f(r0 + dr, u0 + dr * k3u);
    *u = u0 + dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    *du = d0 + dr / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    *r = r0 + dr;
}

fn count_sign_changes(values: &[f64]) -> u32 {
    let mut nodes = 0;
    let mut sign = 0.0;
    for &x in values {
        if x != 0.0 {
            if sign != 0.0 && x.signum() != sign {
                nodes += 1;
            }
            sign = x.signum();
        }
    }
    nodes
}

/// Node-count bisection for the n-th eigenvalue. `widen` moves an
/// endpoint outward when its node count is on the wrong side.
fn solve(
    potential: Potential,
    q: QuantumNumbers,
    config: &SolverConfig,
    mut lo: f64,
    mut hi: f64,
    widen_lo: impl Fn(f64) -> f64,
    widen_hi: impl Fn(f64) -> f64,
) -> Result<RadialSolution> {
    config.validate()?;
    let shooter = Shooter::new(potential, q.ell(), config);
    let target = q.n();

    let mut attempts = 0;
    while shooter.count_nodes(lo) >= target {
        lo = widen_lo(lo);
        attempts += 1;
        if attempts > 60 {
            return Err(Error::NoConvergence {
                method: "oracle lower bracket search",
                iterations: attempts,
                lo,
                hi,
            });
        }
    }
    attempts = 0;
    while shooter.count_nodes(hi) < target {
        hi = widen_hi(hi);
        attempts += 1;
        if attempts > 60 {
            return Err(Error::NoConvergence {
                method: "oracle upper bracket search",
                iterations: attempts,
                lo,
                hi,
            });
        }
    }

    let mut converged = false;
    for _ in 0..config.max_iterations {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= config.energy_tol * lo.abs().max(hi.abs()) || mid <= lo || mid >= hi {
            converged = true;
            break;
        }
        if shooter.count_nodes(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "oracle node-count bisection",
            iterations: config.max_iterations,
            lo,
            hi,
        });
    }

    let energy = 0.5 * (lo + hi);
    let wavefunction = shooter.wavefunction(energy);
    let node_count = count_sign_changes(&wavefunction[1..]);
    if node_count != target - 1 {
        return Err(Error::NodeMismatch {
            expected: target - 1,
            found: node_count,
        });
    }
    Ok(RadialSolution {
        energy,
        node_count,
        wavefunction,
        step: shooter.step,
        converged,
    })
}

/// Eigenvalue `E_nℓ` of `-Δ - v/(r+b)`.
pub fn solve_cutoff_coulomb(q: QuantumNumbers, v: f64, b: f64, config: &SolverConfig) -> Result<RadialSolution> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain("coupling v must be positive", v));
    }
    if !(b >= 0.0 && b.is_finite()) {
        return Err(domain("cutoff b must be non-negative", b));
    }
    let (lower, upper) = coulomb_bounds(q, v, b);
    solve(
        Potential::CutoffCoulomb { v, b },
        q,
        config,
        1.05 * lower,
        0.95 * upper,
        |e| 2.0 * e,
        |e| 0.5 * e,
    )
}

/// `(3((n+ℓ)²/4)^{1/3}, 3((2n+ℓ-½)²/4)^{1/3})`: the hydrogenic-basis lower
/// and harmonic-basis upper envelope estimates for `-Δ + r`.
pub fn linear_estimates(q: QuantumNumbers) -> (f64, f64) {
    let p_lower = q.n_plus_ell();
    let p_upper = 2.0 * f64::from(q.n()) + f64::from(q.ell()) - 0.5;
    (3.0 * cbrt(p_lower * p_lower / 4.0), 3.0 * cbrt(p_upper * p_upper / 4.0))
}

/// Eigenvalue `ℰ_nℓ(1)` of `-Δ + r`.
pub fn solve_linear(q: QuantumNumbers, config: &SolverConfig) -> Result<RadialSolution> {
    let (lower, upper) = linear_estimates(q);
    solve(
        Potential::Linear,
        q,
        config,
        0.9 * lower,
        1.1 * upper,
        |e| 0.5 * e,
        |e| 2.0 * e,
    )
}
