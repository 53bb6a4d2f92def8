//! Property checks over a parameter grid, reported as JSON.

use cutoff_coulomb_core::envelope::{
    envelope_energy, linear_eigenvalue_from_p, p_number_from_linear, parametric_curve,
};
use cutoff_coulomb_core::oracle::solve_cutoff_coulomb;
use cutoff_coulomb_core::QuantumNumbers;
use rayon::prelude::*;
use serde::Serialize;

use crate::compute::{
    bounds_record, exact_energy, linear_eigenvalue, log_grid, oracle_energy, p_numbers, params, relative_discrepancy,
    OracleSettings,
};
use crate::error::{CliError, CliResult};
use crate::reference::{p_reference, P_TABLE_TOLERANCE};

/// Relative slack for `oracle` against a collapsed `b = 0` bracket.
const COLLAPSED_TOLERANCE: f64 = 1e-8;
const SCALING_TOLERANCE: f64 = 1e-6;
const ROUND_TRIP_TOLERANCE: f64 = 1e-8;
const HYDROGEN_TOLERANCE: f64 = 1e-6;
const AGREEMENT_TOLERANCE: f64 = 1e-6;
const SCALING_OMEGA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub n_max: u32,
    pub l_max: u32,
    pub v: Vec<f64>,
    pub b: Vec<f64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            n_max: 3,
            l_max: 2,
            v: vec![0.5, 1.0, 4.0],
            b: vec![0.0, 0.1, 1.0, 10.0],
        }
    }
}

impl Grid {
    fn validate(&self) -> CliResult<()> {
        if self.n_max == 0 || self.v.is_empty() || self.b.is_empty() {
            return Err(CliError::Usage("verification grid is empty".into()));
        }
        if let Some(v) = self.v.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(CliError::Usage(format!("grid coupling must be positive, got {v}")));
        }
        if let Some(b) = self.b.iter().find(|b| !(**b >= 0.0 && b.is_finite())) {
            return Err(CliError::Usage(format!("grid cutoff must be non-negative, got {b}")));
        }
        Ok(())
    }

    fn states(&self) -> Vec<QuantumNumbers> {
        (0..=self.l_max)
            .flat_map(|ell| (1..=self.n_max).map(move |n| QuantumNumbers::new(n, ell).expect("n >= 1")))
            .collect()
    }

    fn cases(&self) -> Vec<(QuantumNumbers, f64, f64)> {
        let mut cases = Vec::new();
        for q in self.states() {
            for &v in &self.v {
                for &b in &self.b {
                    cases.push((q, v, b));
                }
            }
        }
        cases
    }
}

/// Test hook: moves every upper bound down by `(1 - factor)|upper|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Perturbation {
    pub upper_factor: f64,
}

impl Perturbation {
    fn apply(&self, upper: f64) -> f64 {
        upper - (1.0 - self.upper_factor) * upper.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn from_results(name: &'static str, results: Vec<Vec<String>>) -> Self {
        let cases = results.len();
        let failures: Vec<String> = results.into_iter().flatten().collect();
        Self {
            name,
            passed: failures.is_empty(),
            cases,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub passed: bool,
    pub grid: Grid,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
    pub checks: Vec<Check>,
}

fn label(q: QuantumNumbers, v: f64, b: f64) -> String {
    format!("n={} l={} v={v} b={b}", q.n(), q.ell())
}

fn ordering(
    cases: &[(QuantumNumbers, f64, f64)],
    settings: OracleSettings,
    perturbation: Option<Perturbation>,
) -> CliResult<Check> {
    let results = cases
        .par_iter()
        .map(|&(q, v, b)| -> CliResult<Vec<String>> {
            let record = bounds_record(q, &params(1.0, v, b)?, false, settings)?;
            let oracle = oracle_energy(q, &params(1.0, v, b)?, settings)?;
            let upper = perturbation.map_or(record.upper, |p| p.apply(record.upper));
            let mut failures = Vec::new();
            let name = label(q, v, b);
            if !(record.lower <= record.mean && record.mean <= upper) {
                failures.push(format!(
                    "{name}: mean {} outside [{}, {upper}]",
                    record.mean, record.lower
                ));
            }
            let inside = if b > 0.0 {
                record.lower < oracle && oracle < upper
            } else {
                let slack = COLLAPSED_TOLERANCE * oracle.abs();
                record.lower - slack <= oracle && oracle <= upper + slack
            };
            if !inside {
                failures.push(format!("{name}: oracle {oracle} outside [{}, {upper}]", record.lower));
            }
            Ok(failures)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Check::from_results("ordering", results))
}

fn scaling(cases: &[(QuantumNumbers, f64, f64)], settings: OracleSettings) -> CliResult<Check> {
    let results = cases
        .par_iter()
        .map(|&(q, v, b)| -> CliResult<Vec<String>> {
            // ω E(-Δ - (v/ω)/(r+b)) solved directly against the reduced problem
            let coupling = v / SCALING_OMEGA;
            let direct = SCALING_OMEGA * solve_cutoff_coulomb(q, coupling, b, &settings.config(q, coupling, b))?.energy;
            let reduced = oracle_energy(q, &params(SCALING_OMEGA, v, b)?, settings)?;
            let err = relative_discrepancy(reduced, direct);
            Ok(if err < SCALING_TOLERANCE {
                Vec::new()
            } else {
                vec![format!(
                    "{}: direct {direct} vs reduced {reduced} (rel {err:e})",
                    label(q, v, b)
                )]
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Check::from_results("scaling", results))
}

/// Golden-section minimum of `P²/r² + r` over `ln r`.
fn minimize_linear_envelope(p: f64) -> f64 {
    let f = |x: f64| {
        let r = x.exp();
        p * p / (r * r) + r
    };
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (-5.0, 8.0);
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

fn round_trip(grid: &Grid) -> CliResult<Check> {
    let mut results = Vec::new();
    for q in grid.states() {
        let eig = linear_eigenvalue(q)?;
        let p = p_number_from_linear(eig)?;
        let mut failures = Vec::new();
        let name = format!("n={} l={}", q.n(), q.ell());
        for (what, value) in [
            ("minimized", minimize_linear_envelope(p)),
            ("closed form", linear_eigenvalue_from_p(p)),
        ] {
            let err = relative_discrepancy(value, eig);
            if err >= ROUND_TRIP_TOLERANCE {
                failures.push(format!("{name}: {what} {value} vs eigenvalue {eig} (rel {err:e})"));
            }
        }
        for &b in &grid.b {
            for point in parametric_curve(p, b, &log_grid(0.05, 200.0, 24))? {
                let e = envelope_energy(p, point.v, b)?;
                let err = relative_discrepancy(e, point.energy);
                if err >= ROUND_TRIP_TOLERANCE {
                    failures.push(format!(
                        "{name} b={b} r={}: curve {} vs envelope {e}",
                        point.r, point.energy
                    ));
                }
            }
        }
        results.push(failures);
    }
    Ok(Check::from_results("round-trip", results))
}

fn regression(grid: &Grid, cases: &[(QuantumNumbers, f64, f64)], settings: OracleSettings) -> CliResult<Check> {
    let mut results = Vec::new();
    for q in grid.states() {
        if let Some((mean, upper)) = p_reference(q.n(), q.ell()) {
            let p = p_numbers(q)?.0;
            let mut failures = Vec::new();
            for (what, got, want) in [("P^M", p.mean, mean), ("P^U", p.upper, upper)] {
                if (got - want).abs() > P_TABLE_TOLERANCE {
                    failures.push(format!("n={} l={}: {what} {got} vs {want}", q.n(), q.ell()));
                }
            }
            results.push(failures);
        }
    }
    let hydrogen = cases
        .par_iter()
        .filter(|(_, _, b)| *b == 0.0)
        .map(|&(q, v, b)| -> CliResult<Vec<String>> {
            let exact = -v * v / (4.0 * q.n_plus_ell() * q.n_plus_ell());
            let record = bounds_record(q, &params(1.0, v, b)?, true, settings)?;
            let oracle = record
                .oracle
                .ok_or_else(|| CliError::Verification(record.error.clone().unwrap_or_default()))?;
            Ok([("lower", record.lower), ("upper", record.upper), ("oracle", oracle)]
                .into_iter()
                .filter(|&(_, value)| relative_discrepancy(value, exact) >= HYDROGEN_TOLERANCE)
                .map(|(what, value)| format!("{}: {what} {value} vs hydrogen {exact}", label(q, v, b)))
                .collect())
        })
        .collect::<CliResult<Vec<_>>>()?;
    results.extend(hydrogen);
    Ok(Check::from_results("regression", results))
}

fn swave_agreement(cases: &[(QuantumNumbers, f64, f64)], settings: OracleSettings) -> CliResult<Check> {
    let results = cases
        .par_iter()
        .filter(|(q, _, b)| q.ell() == 0 && *b > 0.0)
        .map(|&(q, v, b)| -> CliResult<Vec<String>> {
            let p = params(1.0, v, b)?;
            let exact = exact_energy(q.n(), &p)?;
            let oracle = oracle_energy(q, &p, settings)?;
            let err = relative_discrepancy(oracle, exact);
            Ok(if err < AGREEMENT_TOLERANCE {
                Vec::new()
            } else {
                vec![format!(
                    "{}: exact {exact} vs oracle {oracle} (rel {err:e})",
                    label(q, v, b)
                )]
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Check::from_results("exact-swave", results))
}

pub fn run(grid: Grid, settings: OracleSettings, perturbation: Option<Perturbation>) -> CliResult<Report> {
    grid.validate()?;
    let cases = grid.cases();
    let checks = vec![
        ordering(&cases, settings, perturbation)?,
        scaling(&cases, settings)?,
        round_trip(&grid)?,
        regression(&grid, &cases, settings)?,
        swave_agreement(&cases, settings)?,
    ];
    Ok(Report {
        passed: checks.iter().all(|c| c.passed),
        grid,
        perturbation,
        checks,
    })
}
