//! Problem definition: parameters, the cutoff Coulomb potential and the
//! scaling reduction.

use libm::sqrt;

use crate::error::{domain, Result};

/// Parameters of `H = -ωΔ - v/(r+b)`.
///
/// `b = 0` is admitted and gives the pure Coulomb (hydrogenic) problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    omega: f64,
    v: f64,
    b: f64,
}

impl ProblemParams {
    pub fn new(omega: f64, v: f64, b: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(domain("omega must be positive and finite", omega));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(domain("coupling v must be positive and finite", v));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(domain("cutoff b must be non-negative and finite", b));
        }
        Ok(Self { omega, v, b })
    }

    /// Reduced-unit parameters (ω = 1).
    pub fn reduced(v: f64, b: f64) -> Result<Self> {
        Self::new(1.0, v, b)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Radial index `n >= 1` and angular momentum `ℓ >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    n: u32,
    ell: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("radial quantum number n must be >= 1", 0.0));
        }
        Ok(Self { n, ell })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `n + ℓ`, the hydrogenic principal-like number.
    pub fn n_plus_ell(&self) -> f64 {
        f64::from(self.n) + f64::from(self.ell)
    }
}

/// The one-parameter problem `H = -Δ - 1/(r + b_reduced)` together with
/// the factor that maps its eigenvalues back to the original problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledProblem {
    pub b_reduced: f64,
    pub energy_factor: f64,
}

impl ScaledProblem {
    /// Maps a reduced eigenvalue to the original problem.
    pub fn restore(&self, reduced_energy: f64) -> f64 {
        self.energy_factor * reduced_energy
    }

    /// Reduced-unit parameters `(ω, v, b) = (1, 1, b_reduced)`.
    pub fn params(&self) -> ProblemParams {
        ProblemParams {
            omega: 1.0,
            v: 1.0,
            b: self.b_reduced,
        }
    }
}

/// The three terms `-v/r`, `vb/r²` and `-vb²/(r²(r+b))` whose sum is
/// the cutoff Coulomb potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialTerms {
    pub coulomb: f64,
    pub centrifugal_like: f64,
    pub remainder: f64,
}

impl PotentialTerms {
    pub fn sum(&self) -> f64 {
        self.coulomb + self.centrifugal_like + self.remainder
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(domain("radius must be positive and finite", r))
    }
}

/// `f(r) = -v/(r+b)`.
pub fn potential(params: &ProblemParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(-params.v / (r + params.b))
}

pub fn potential_decomposition(params: &ProblemParams, r: f64) -> Result<PotentialTerms> {
    check_radius(r)?;
    let (v, b) = (params.v, params.b);
    let r2 = r * r;
    Ok(PotentialTerms {
        coulomb: -v / r,
        centrifugal_like: v * b / r2,
        remainder: -v * b * b / (r2 * (r + b)),
    })
}

/// `f(r) + ℓ(ℓ+1)/r²`.
pub fn effective_potential(params: &ProblemParams, ell: u32, r: f64) -> Result<f64> {
    let f = potential(params, r)?;
    Ok(f + centrifugal(f64::from(ell), r))
}

/// The hydrogenic effective potentials `(V_l, V_u)` that sandwich the
/// cutoff effective potential:
/// `V_l = -v/r + ℓ(ℓ+1)/r²`, `V_u = -v/r + λ(λ+1)/r²`.
pub fn hydrogenic_envelopes(params: &ProblemParams, ell: u32, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    let lambda = lambda_eff(ell, params.v, params.b);
    let coulomb = -params.v / r;
    Ok((
        coulomb + centrifugal(f64::from(ell), r),
        coulomb + centrifugal(lambda, r),
    ))
}

fn centrifugal(ell: f64, r: f64) -> f64 {
    ell * (ell + 1.0) / (r * r)
}

/// Effective angular momentum `λ = √((ℓ+½)² + vb) - ½`.
///
/// `λ(λ+1) = ℓ(ℓ+1) + vb`, so the `vb/r²` term of the decomposition is
/// absorbed into a hydrogenic centrifugal barrier.
pub fn lambda_eff(ell: u32, v: f64, b: f64) -> f64 {
    let half = f64::from(ell) + 0.5;
    sqrt(half * half + v * b) - 0.5
}

/// `ℰ(ω, v, b) = (v²/ω) ℰ(1, 1, vb/ω)`.
pub fn scale_reduce(params: &ProblemParams) -> ScaledProblem {
    ScaledProblem {
        b_reduced: params.v * params.b / params.omega,
        energy_factor: params.v * params.v / params.omega,
    }
}
