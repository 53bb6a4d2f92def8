//! Comparison and envelope bounds for the cutoff Coulomb spectrum.
//!
//! Two solvable bases are used, the hydrogenic `h(r) = -1/r` and the
//! linear `h(r) = r`. Writing `f(r) = -v/(r+b)` as `g(h(r))`, `g` is
//! convex over the hydrogenic basis and concave over the linear one, so
//! the tangent lines of `g` give potentials lying below or above `f` and
//! hence lower or upper energy bounds. After the change of variable
//! `h̄(s) = h(r)` every such bound takes the form
//!
//! ```text
//! E ≈ min_{r>0} { P²/r² - v/(r+b) }
//! ```
//!
//! with `P = n + ℓ` (lower bound) or `P = P_nℓ(1)` from the linear
//! spectrum (upper bound). All energies here are in reduced units (ω = 1).

use alloc::vec::Vec;
use libm::{cbrt, pow, sqrt};

use crate::error::{domain, Error, Result};
use crate::model::{lambda_eff, QuantumNumbers};
use crate::roots::newton_bracketed;

/// The power-law envelope basis `h(r) = sgn(q) r^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `q = -1`, `h(r) = -1/r`.
    Coulomb,
    /// `q = 1`, `h(r) = r`.
    Linear,
}

impl Basis {
    pub fn exponent(self) -> f64 {
        match self {
            Basis::Coulomb => -1.0,
            Basis::Linear => 1.0,
        }
    }

    pub fn h(self, r: f64) -> f64 {
        match self {
            Basis::Coulomb => -1.0 / r,
            Basis::Linear => r,
        }
    }

    pub fn h_prime(self, r: f64) -> f64 {
        match self {
            Basis::Coulomb => 1.0 / (r * r),
            Basis::Linear => 1.0,
        }
    }

    /// Inverse of `h`: the radius at which the basis takes value `h`.
    pub fn radius_of(self, h: f64) -> f64 {
        match self {
            Basis::Coulomb => -1.0 / h,
            Basis::Linear => h,
        }
    }
}

/// Hydrogenic comparison bounds
/// `-v²/(4(n+ℓ)²) <= E_nℓ <= -v²/(4(n+λ)²)`.
pub fn coulomb_bounds(q: QuantumNumbers, v: f64, b: f64) -> (f64, f64) {
    let lambda = lambda_eff(q.ell(), v, b);
    let v2 = v * v;
    let lower = -v2 / (4.0 * q.n_plus_ell() * q.n_plus_ell());
    let n_lambda = f64::from(q.n()) + lambda;
    let upper = -v2 / (4.0 * n_lambda * n_lambda);
    (lower, upper)
}

/// Upper bound from the tangent line `-v/b + v r/b²` at the origin:
/// `E < -v/b + (v/b²)^{2/3} ℰ_nℓ(1)`.
pub fn linear_upper(v: f64, b: f64, linear_eig: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(domain("linear upper bound needs b > 0", b));
    }
    if !(linear_eig > 0.0) {
        return Err(domain("linear-potential eigenvalue must be positive", linear_eig));
    }
    Ok(-v / b + cbrt((v / (b * b)) * (v / (b * b))) * linear_eig)
}

/// Kinetic potential of the pure power `sgn(q) r^q`:
/// `h̄(s) = (2/q) |q ℰ/(2+q)|^{(q+2)/2} s^{-q/2}`.
pub fn kinetic_potential(basis: Basis, pure_power_eig: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain("kinetic potential argument must be positive", s));
    }
    check_pure_power_eig(basis, pure_power_eig)?;
    Ok(kinetic_coefficient(basis, pure_power_eig) * pow(s, -basis.exponent() / 2.0))
}

fn check_pure_power_eig(basis: Basis, eig: f64) -> Result<()> {
    let ok = match basis {
        Basis::Coulomb => eig < 0.0,
        Basis::Linear => eig > 0.0,
    };
    if ok && eig.is_finite() {
        Ok(())
    } else {
        Err(domain("pure-power eigenvalue has the wrong sign for the basis", eig))
    }
}

fn kinetic_coefficient(basis: Basis, eig: f64) -> f64 {
    let q = basis.exponent();
    (2.0 / q) * pow((q * eig / (2.0 + q)).abs(), (q + 2.0) / 2.0)
}

/// `min_{s>0} { s + coupling·h̄(s) }`, the eigenvalue of
/// `-Δ + coupling·sgn(q) r^q` reconstructed from its kinetic potential.
///
/// The stationary point is `s* = (q·coupling·C/2)^{2/(q+2)}` where
/// `h̄(s) = C s^{-q/2}`.
pub fn semiclassical_energy(basis: Basis, pure_power_eig: f64, coupling: f64) -> Result<f64> {
    check_pure_power_eig(basis, pure_power_eig)?;
    if !(coupling > 0.0) {
        return Err(domain("coupling must be positive", coupling));
    }
    let q = basis.exponent();
    let c = kinetic_coefficient(basis, pure_power_eig);
    let s = pow(q * coupling * c / 2.0, 2.0 / (q + 2.0));
    Ok(s + coupling * c * pow(s, -q / 2.0))
}

/// `g(h) = f(r(h))`, the cutoff potential as a function of the basis value.
pub fn transformation(basis: Basis, v: f64, b: f64, h: f64) -> Result<f64> {
    let r = basis.radius_of(h);
    if !(r > 0.0) {
        return Err(domain("basis value does not correspond to a positive radius", h));
    }
    Ok(-v / (r + b))
}

/// Closed-form `g''(h)` at radius `r`: `2vb/(b/r + 1)³` over the hydrogenic
/// basis, `-2v/(b + r)³` over the linear one.
pub fn transformation_curvature(basis: Basis, v: f64, b: f64, r: f64) -> f64 {
    match basis {
        Basis::Coulomb => {
            let t = b / r + 1.0;
            2.0 * v * b / (t * t * t)
        }
        Basis::Linear => {
            let t = b + r;
            -2.0 * v / (t * t * t)
        }
    }
}

/// Tangential potential `a + slope·h(r)` touching `f` at the contact radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentLine {
    pub basis: Basis,
    pub offset: f64,
    pub slope: f64,
    pub contact: f64,
}

impl TangentLine {
    pub fn eval(&self, r: f64) -> f64 {
        self.offset + self.slope * self.basis.h(r)
    }
}

/// Solves the contact equations `f(t) = a + b_t h(t)`, `f'(t) = b_t h'(t)`.
///
/// Over the hydrogenic basis the line lies below `f` everywhere, over the
/// linear basis it lies above.
pub fn tangent_line(t: f64, basis: Basis, v: f64, b: f64) -> Result<TangentLine> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain("contact radius must be positive", t));
    }
    let f = -v / (t + b);
    let f_prime = v / ((t + b) * (t + b));
    let slope = f_prime / basis.h_prime(t);
    Ok(TangentLine {
        basis,
        offset: f - slope * basis.h(t),
        slope,
        contact: t,
    })
}

/// Minimizer and minimum of `P²/r² - v/(r+b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeMinimum {
    pub radius: f64,
    pub energy: f64,
}

/// `v r³ - 2P² r² - 4P² b r - 2P² b²`; its unique positive root is the
/// stationary point of the envelope objective.
pub fn stationarity_cubic(p: f64, v: f64, b: f64, r: f64) -> f64 {
    let p2 = p * p;
    ((v * r - 2.0 * p2) * r - 4.0 * p2 * b) * r - 2.0 * p2 * b * b
}

fn stationarity_cubic_derivative(p: f64, v: f64, b: f64, r: f64) -> f64 {
    let p2 = p * p;
    (3.0 * v * r - 4.0 * p2) * r - 4.0 * p2 * b
}

pub fn envelope_minimum(p: f64, v: f64, b: f64) -> Result<EnvelopeMinimum> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain("P-number must be positive", p));
    }
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain("coupling v must be positive", v));
    }
    if !(b >= 0.0 && b.is_finite()) {
        return Err(domain("cutoff b must be non-negative", b));
    }
    // Coulomb minimizer: the cubic is <= 0 here, so r* >= r0.
    let r0 = 2.0 * p * p / v;
    let radius = if b == 0.0 {
        r0
    } else {
        let mut hi = r0 + b;
        while stationarity_cubic(p, v, b, hi) <= 0.0 {
            hi *= 2.0;
        }
        // well inside the 1e-10 target on r*; Newton converges quadratically
        let tol = 8.0 * f64::EPSILON * hi;
        newton_bracketed(
            |r| {
                (
                    stationarity_cubic(p, v, b, r),
                    stationarity_cubic_derivative(p, v, b, r),
                )
            },
            r0,
            hi,
            r0,
            tol,
        )?
    };
    Ok(EnvelopeMinimum {
        radius,
        energy: envelope_objective(p, v, b, radius),
    })
}

/// `P²/r² - v/(r+b)`.
pub fn envelope_objective(p: f64, v: f64, b: f64, r: f64) -> f64 {
    p * p / (r * r) - v / (r + b)
}

/// `min_{r>0} { P²/r² - v/(r+b) }`.
pub fn envelope_energy(p: f64, v: f64, b: f64) -> Result<f64> {
    envelope_minimum(p, v, b).map(|m| m.energy)
}

/// `P = 2(ℰ/3)^{3/2}`, inverting `ℰ = min_r {P²/r² + r} = 3(P²/4)^{1/3}`.
pub fn p_number_from_linear(linear_eig: f64) -> Result<f64> {
    if !(linear_eig > 0.0 && linear_eig.is_finite()) {
        return Err(domain("linear-potential eigenvalue must be positive", linear_eig));
    }
    let x = linear_eig / 3.0;
    Ok(2.0 * x * sqrt(x))
}

/// `3(P²/4)^{1/3}`, the eigenvalue of `-Δ + r` encoded by a P-number.
pub fn linear_eigenvalue_from_p(p: f64) -> f64 {
    3.0 * cbrt(p * p / 4.0)
}

/// The P-number triple for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PNumbers {
    pub lower: f64,
    pub mean: f64,
    pub upper: f64,
}

impl PNumbers {
    pub fn new(q: QuantumNumbers, p_upper: f64) -> Result<Self> {
        let lower = q.n_plus_ell();
        if !(p_upper > lower) {
            return Err(domain("P(1) must exceed n + l", p_upper));
        }
        Ok(Self {
            lower,
            mean: (lower + p_upper) / 2.0,
            upper: p_upper,
        })
    }

    pub fn from_linear(q: QuantumNumbers, linear_eig: f64) -> Result<Self> {
        Self::new(q, p_number_from_linear(linear_eig)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTableRow {
    pub quantum: QuantumNumbers,
    pub linear_eig: f64,
    pub p: PNumbers,
}

/// Builds the P-number table for `n = 1..=n_max`, `ℓ = 0..=ell_max`,
/// ordered by ℓ then n. `linear_eig` supplies `ℰ_nℓ(1)`.
pub fn p_table<F>(n_max: u32, ell_max: u32, mut linear_eig: F) -> Result<Vec<PTableRow>>
where
    F: FnMut(QuantumNumbers) -> Option<f64>,
{
    let mut rows = Vec::new();
    for ell in 0..=ell_max {
        for n in 1..=n_max {
            let quantum = QuantumNumbers::new(n, ell)?;
            let eig = linear_eig(quantum).ok_or(Error::IncompleteTable { n, ell })?;
            rows.push(PTableRow {
                quantum,
                linear_eig: eig,
                p: PNumbers::from_linear(quantum, eig)?,
            });
        }
    }
    Ok(rows)
}

/// Which formula produced a side of an [`EnergyBracket`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSource {
    Hydrogenic,
    EnvelopeLower,
    EnvelopeUpper,
    CoulombTail,
    Linear,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::Hydrogenic => "hydrogenic",
            BoundSource::EnvelopeLower => "envelope-lower",
            BoundSource::EnvelopeUpper => "envelope-upper",
            BoundSource::CoulombTail => "coulomb-tail",
            BoundSource::Linear => "linear",
        }
    }
}

impl core::fmt::Display for BoundSource {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Certified energy interval plus the mean-P estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBracket {
    pub lower: f64,
    pub upper: f64,
    /// Envelope energy at `P^M`, clamped into `[lower, upper]`.
    pub mean_estimate: f64,
    /// Envelope energy at `P^M` as given by the formula.
    pub envelope_mean: f64,
    pub lower_source: BoundSource,
    pub upper_source: BoundSource,
}

impl EnergyBracket {
    pub fn contains(&self, energy: f64) -> bool {
        self.lower <= energy && energy <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Multiplies every energy by `factor > 0` (the scaling map back to ω ≠ 1).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            lower: self.lower * factor,
            upper: self.upper * factor,
            mean_estimate: self.mean_estimate * factor,
            envelope_mean: self.envelope_mean * factor,
            ..*self
        }
    }
}

/// Intersects every available rigorous bound.
///
/// `linear_eig` is `ℰ_nℓ(1)`; it only contributes when `b > 0`.
pub fn bracket(q: QuantumNumbers, v: f64, b: f64, p: &PNumbers, linear_eig: f64) -> Result<EnergyBracket> {
    let (hydrogenic, coulomb_tail) = coulomb_bounds(q, v, b);
    let envelope_lower = envelope_energy(p.lower, v, b)?;
    let envelope_upper = envelope_energy(p.upper, v, b)?;
    let envelope_mean = envelope_energy(p.mean, v, b)?;

    let (lower, lower_source) = if envelope_lower > hydrogenic {
        (envelope_lower, BoundSource::EnvelopeLower)
    } else {
        (hydrogenic, BoundSource::Hydrogenic)
    };

    let mut upper = (coulomb_tail, BoundSource::CoulombTail);
    if b > 0.0 {
        let linear = linear_upper(v, b, linear_eig)?;
        if linear < upper.0 {
            upper = (linear, BoundSource::Linear);
        }
    }
    if envelope_upper < upper.0 {
        upper = (envelope_upper, BoundSource::EnvelopeUpper);
    }

    Ok(EnergyBracket {
        lower,
        upper: upper.0,
        mean_estimate: envelope_mean.clamp(lower, upper.0.max(lower)),
        envelope_mean,
        lower_source,
        upper_source: upper.1,
    })
}

/// One point `{v(r), ℰ(r)}` of the parametric energy curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub r: f64,
    pub v: f64,
    pub energy: f64,
}

/// For `f(r) = -1/(r+b)`: `v = 2P²/(r³ f'(r))`, `ℰ = P²/r² + 2P² f(r)/(r³ f'(r))`.
pub fn parametric_point(p: f64, b: f64, r: f64) -> Result<CurvePoint> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain("curve radius must be positive", r));
    }
    if !(p > 0.0) {
        return Err(domain("P-number must be positive", p));
    }
    if !(b >= 0.0) {
        return Err(domain("cutoff b must be non-negative", b));
    }
    let p2 = p * p;
    let r3 = r * r * r;
    let rb = r + b;
    Ok(CurvePoint {
        r,
        v: 2.0 * p2 * rb * rb / r3,
        energy: p2 / (r * r) - 2.0 * p2 * rb / r3,
    })
}

pub fn parametric_curve(p: f64, b: f64, r_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    r_grid.iter().map(|&r| parametric_point(p, b, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(n: u32, ell: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, ell).unwrap()
    }

    #[test]
    fn coulomb_bound_values() {
        assert_eq!(coulomb_bounds(qn(1, 0), 1.0, 0.0), (-0.25, -0.25));
        let (lo, hi) = coulomb_bounds(qn(1, 0), 1.0, 2.0);
        assert_eq!(lo, -0.25);
        assert!((hi + 0.0625).abs() < 1e-15);
        assert_eq!(coulomb_bounds(qn(3, 1), 1.0, 0.0), (-1.0 / 64.0, -1.0 / 64.0));
    }

    #[test]
    fn linear_upper_values() {
        assert!((linear_upper(1.0, 1.0, 2.33811).unwrap() - 1.33811).abs() < 1e-12);
        let expected = -0.1 + cbrt(1e-4) * 2.33811;
        assert!((linear_upper(1.0, 10.0, 2.33811).unwrap() - expected).abs() < 1e-14);
        assert!((linear_upper(1.0, 10.0, 2.33811).unwrap() - 0.008_53).abs() < 1e-5);
        assert!(linear_upper(1.0, 10.0, 2.4).unwrap() > linear_upper(1.0, 10.0, 2.3).unwrap());
        assert!(linear_upper(1.0, 0.0, 2.33811).is_err());
    }

    #[test]
    fn kinetic_potential_values() {
        assert!((kinetic_potential(Basis::Coulomb, -0.25, 1.0).unwrap() + 1.0).abs() < 1e-15);
        assert!(kinetic_potential(Basis::Coulomb, -0.25, 0.0).is_err());
        assert!(kinetic_potential(Basis::Coulomb, 0.25, 1.0).is_err());
        assert!(kinetic_potential(Basis::Linear, -2.0, 1.0).is_err());
        let ratio = kinetic_potential(Basis::Coulomb, -0.25, 4.0).unwrap()
            / kinetic_potential(Basis::Coulomb, -0.25, 1.0).unwrap();
        assert!((ratio - 2.0).abs() < 1e-14);
        let ratio = kinetic_potential(Basis::Linear, 2.33811, 4.0).unwrap()
            / kinetic_potential(Basis::Linear, 2.33811, 1.0).unwrap();
        assert!((ratio - 0.5).abs() < 1e-14);
    }

    #[test]
    fn semiclassical_energy_reproduces_input() {
        assert!((semiclassical_energy(Basis::Coulomb, -0.25, 1.0).unwrap() + 0.25).abs() < 1e-15);
        let e = semiclassical_energy(Basis::Linear, 2.33811, 1.0).unwrap();
        assert!(((e - 2.33811) / 2.33811).abs() < 1e-14);
        // pure-power scaling: Coulomb ∝ v², linear ∝ v^{2/3}
        let e = semiclassical_energy(Basis::Coulomb, -0.25, 3.0).unwrap();
        assert!((e + 2.25).abs() < 1e-13);
        let e = semiclassical_energy(Basis::Linear, 2.0, 8.0).unwrap();
        assert!((e - 8.0).abs() < 1e-13);
    }

    #[test]
    fn tangent_line_values() {
        for t in [0.1, 1.0, 7.0] {
            let line = tangent_line(t, Basis::Coulomb, 1.0, 0.0).unwrap();
            assert!(line.offset.abs() < 1e-15);
            assert!((line.slope - 1.0).abs() < 1e-15);
        }
        let line = tangent_line(1.0, Basis::Coulomb, 1.0, 1.0).unwrap();
        assert_eq!(line.slope, 0.25);
        assert_eq!(line.offset, -0.25);
        assert_eq!(line.eval(1.0), -0.5);
        for r in [0.1, 1.0, 10.0] {
            assert!(line.eval(r) <= -1.0 / (r + 1.0));
        }
        assert!(tangent_line(0.0, Basis::Linear, 1.0, 1.0).is_err());
    }

    #[test]
    fn envelope_energy_hydrogen_limit() {
        assert_eq!(envelope_energy(1.0, 1.0, 0.0).unwrap(), -0.25);
        assert_eq!(envelope_minimum(1.0, 1.0, 0.0).unwrap().radius, 2.0);
        for q in [qn(1, 0), qn(2, 1), qn(3, 2), qn(1, 4)] {
            let e = envelope_energy(q.n_plus_ell(), 1.0, 0.0).unwrap();
            let (lo, _) = coulomb_bounds(q, 1.0, 0.0);
            assert!((e - lo).abs() <= 1e-16);
        }
    }

    #[test]
    fn envelope_minimizer_solves_cubic() {
        let m = envelope_minimum(1.0, 1.0, 1.0).unwrap();
        assert!(stationarity_cubic(1.0, 1.0, 1.0, m.radius).abs() < 1e-9);
        assert!(m.energy > -0.25 && m.energy < 0.0);
        assert!(envelope_energy(0.0, 1.0, 1.0).is_err());
        assert!(envelope_energy(1.0, 0.0, 1.0).is_err());
        assert!(envelope_energy(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn p_number_inversion() {
        let p = p_number_from_linear(2.33811).unwrap();
        assert!((p - 1.37608).abs() < 1e-5);
        assert!((linear_eigenvalue_from_p(p) - 2.33811).abs() < 1e-13);
        assert!(p_number_from_linear(0.0).is_err());
        assert!(p_number_from_linear(-1.0).is_err());
    }

    #[test]
    fn p_numbers_invariants() {
        let p = PNumbers::new(qn(5, 4), 12.47532).unwrap();
        assert_eq!(p.lower, 9.0);
        assert_eq!(p.mean, (9.0 + 12.47532) / 2.0);
        assert!(PNumbers::new(qn(2, 0), 1.5).is_err());
    }

    #[test]
    fn p_table_reports_missing_entries() {
        let err = p_table(2, 1, |q| if q.ell() == 1 && q.n() == 2 { None } else { Some(5.0) }).unwrap_err();
        assert_eq!(err, Error::IncompleteTable { n: 2, ell: 1 });
        let rows = p_table(2, 1, |_| Some(5.0)).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].quantum.n(), rows[0].quantum.ell()), (1, 0));
        assert_eq!((rows[2].quantum.n(), rows[2].quantum.ell()), (1, 1));
    }

    #[test]
    fn bracket_collapses_for_hydrogen() {
        let q = qn(1, 0);
        let p = PNumbers::from_linear(q, 2.338_107_410_459_767).unwrap();
        let br = bracket(q, 1.0, 0.0, &p, 2.338_107_410_459_767).unwrap();
        assert_eq!(br.lower, -0.25);
        assert_eq!(br.upper, -0.25);
        assert_eq!(br.mean_estimate, -0.25);
        assert!(br.envelope_mean > -0.25);
        assert_eq!(br.upper_source, BoundSource::CoulombTail);
    }

    #[test]
    fn bracket_envelope_lower_dominates_for_positive_cutoff() {
        let q = qn(1, 1);
        let eig = 3.361_254_523;
        let p = PNumbers::from_linear(q, eig).unwrap();
        let br = bracket(q, 1.0, 1.0, &p, eig).unwrap();
        assert!(br.lower > coulomb_bounds(q, 1.0, 1.0).0);
        assert_eq!(br.lower_source, BoundSource::EnvelopeLower);
        assert!(br.lower <= br.mean_estimate && br.mean_estimate <= br.upper);
    }

    #[test]
    fn parametric_values() {
        let pt = parametric_point(1.0, 0.0, 2.0).unwrap();
        assert_eq!((pt.v, pt.energy), (1.0, -0.25));
        let pt = parametric_point(1.0, 1.0, 1.0).unwrap();
        assert_eq!((pt.v, pt.energy), (8.0, -3.0));
        assert!((envelope_energy(1.0, 8.0, 1.0).unwrap() + 3.0).abs() < 1e-12);
        assert!(parametric_curve(1.0, 1.0, &[1.0, 0.0]).is_err());
    }
}
