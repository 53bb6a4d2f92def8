//! Record builders shared by the subcommands, the verify suite and the
//! acceptance tests.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use cutoff_coulomb_core::envelope::{bracket, envelope_energy, parametric_curve, EnergyBracket, PNumbers};
use cutoff_coulomb_core::exact_swave::{swave_exact, DEFAULT_TOLERANCE};
use cutoff_coulomb_core::model::scale_reduce;
use cutoff_coulomb_core::oracle::{solve_cutoff_coulomb, solve_linear, SolverConfig};
use cutoff_coulomb_core::{ProblemParams, QuantumNumbers};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::record::{format_number, OutputRecord, Table};

/// Oracle overrides taken from the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OracleSettings {
    pub grid_points: Option<usize>,
}

impl OracleSettings {
    pub fn config(&self, q: QuantumNumbers, v: f64, b: f64) -> SolverConfig {
        let config = SolverConfig::cutoff_coulomb(q, v, b);
        match self.grid_points {
            Some(points) => config.with_grid_points(points),
            None => config,
        }
    }
}

fn linear_cache() -> &'static Mutex<HashMap<(u32, u32), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), f64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `ℰ_nℓ(1)` of `-Δ + r` from the shooting solver, memoized per process.
pub fn linear_eigenvalue(q: QuantumNumbers) -> cutoff_coulomb_core::Result<f64> {
    let key = (q.n(), q.ell());
    if let Some(&eig) = linear_cache().lock().unwrap().get(&key) {
        return Ok(eig);
    }
    let eig = solve_linear(q, &SolverConfig::linear(q))?.energy;
    linear_cache().lock().unwrap().insert(key, eig);
    Ok(eig)
}

pub fn quantum(n: u32, ell: u32) -> CliResult<QuantumNumbers> {
    QuantumNumbers::new(n, ell).map_err(CliError::usage_from)
}

pub fn params(omega: f64, v: f64, b: f64) -> CliResult<ProblemParams> {
    ProblemParams::new(omega, v, b).map_err(CliError::usage_from)
}

pub fn p_numbers(q: QuantumNumbers) -> CliResult<(PNumbers, f64)> {
    let eig = linear_eigenvalue(q)?;
    Ok((PNumbers::from_linear(q, eig)?, eig))
}

/// Bracket of `E_nℓ(ω, v, b)` in the caller's units.
pub fn bracket_for(q: QuantumNumbers, params: &ProblemParams) -> CliResult<EnergyBracket> {
    let (p, eig) = p_numbers(q)?;
    let scaled = scale_reduce(params);
    let reduced = bracket(q, 1.0, scaled.b_reduced, &p, eig)?;
    Ok(reduced.scaled(scaled.energy_factor))
}

/// Oracle eigenvalue of `E_nℓ(ω, v, b)`, solved in reduced units.
pub fn oracle_energy(q: QuantumNumbers, params: &ProblemParams, settings: OracleSettings) -> CliResult<f64> {
    let scaled = scale_reduce(params);
    let solution = solve_cutoff_coulomb(q, 1.0, scaled.b_reduced, &settings.config(q, 1.0, scaled.b_reduced))?;
    Ok(scaled.restore(solution.energy))
}

pub fn exact_energy(n: u32, params: &ProblemParams) -> CliResult<f64> {
    let scaled = scale_reduce(params);
    let root = swave_exact(n, 1.0, scaled.b_reduced, DEFAULT_TOLERANCE)?;
    Ok(scaled.restore(root.energy))
}

pub fn bounds_record(
    q: QuantumNumbers,
    params: &ProblemParams,
    with_oracle: bool,
    settings: OracleSettings,
) -> CliResult<OutputRecord> {
    let br = bracket_for(q, params)?;
    let mut record = OutputRecord {
        n: q.n(),
        l: q.ell(),
        omega: params.omega(),
        v: params.v(),
        b: params.b(),
        lower: br.lower,
        mean: br.mean_estimate,
        upper: br.upper,
        oracle: None,
        exact_swave: None,
        lower_source: br.lower_source.as_str(),
        upper_source: br.upper_source.as_str(),
        error: None,
    };
    if with_oracle {
        match oracle_energy(q, params, settings) {
            Ok(e) => record.oracle = Some(e),
            Err(err) => record.error = Some(format!("oracle: {err}")),
        }
    }
    Ok(record)
}

/// S-wave record with both the exact root and the oracle value.
pub fn exact_record(n: u32, params: &ProblemParams, settings: OracleSettings) -> CliResult<OutputRecord> {
    if !(params.b() > 0.0) {
        return Err(CliError::Usage("the exact S-wave condition needs b > 0".into()));
    }
    let q = quantum(n, 0)?;
    let mut record = bounds_record(q, params, true, settings)?;
    record.exact_swave = Some(exact_energy(n, params)?);
    Ok(record)
}

pub fn relative_discrepancy(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Log-spaced grid of `points` values on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == points {
                hi
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PChoice {
    Lower,
    Mean,
    Upper,
}

impl PChoice {
    pub fn pick(self, p: &PNumbers) -> f64 {
        match self {
            PChoice::Lower => p.lower,
            PChoice::Mean => p.mean,
            PChoice::Upper => p.upper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(serialize_with = "crate::record::rounded")]
    pub r: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub v: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub energy: f64,
}

impl Table for CurveRow {
    fn header() -> &'static str {
        "r,v,energy"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{}",
            format_number(self.r),
            format_number(self.v),
            format_number(self.energy)
        )
    }
}

pub struct CurveRequest {
    pub q: QuantumNumbers,
    pub b: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub choice: PChoice,
}

/// Approximate energy curve `{v, ℰ(v)}` of `-Δ - v/(r+b)` on a log radius grid.
pub fn curve_rows(req: &CurveRequest) -> CliResult<Vec<CurveRow>> {
    if !(req.r_min > 0.0 && req.r_min < req.r_max && req.r_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "need 0 < r-min < r-max, got r-min = {} and r-max = {}",
            req.r_min, req.r_max
        )));
    }
    if req.points < 2 {
        return Err(CliError::Usage("need at least 2 points".into()));
    }
    if !(req.b >= 0.0 && req.b.is_finite()) {
        return Err(CliError::Usage(format!("cutoff b must be non-negative, got {}", req.b)));
    }
    let p = match req.choice {
        PChoice::Lower => req.q.n_plus_ell(),
        choice => choice.pick(&p_numbers(req.q)?.0),
    };
    let points = parametric_curve(p, req.b, &log_grid(req.r_min, req.r_max, req.points))?;
    Ok(points
        .into_iter()
        .map(|pt| CurveRow {
            r: pt.r,
            v: pt.v,
            energy: pt.energy,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PTableLine {
    pub n: u32,
    pub l: u32,
    #[serde(serialize_with = "crate::record::rounded")]
    pub p_lower: f64,
    #[serde(serialize_with = "crate::record::rounded_opt")]
    pub p_mean: Option<f64>,
    #[serde(serialize_with = "crate::record::rounded_opt")]
    pub p_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Table for PTableLine {
    fn header() -> &'static str {
        "n,l,p_lower,p_mean,p_upper,error"
    }

    fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.l,
            format_number(self.p_lower),
            opt(self.p_mean),
            opt(self.p_upper),
            self.error.as_deref().unwrap_or("")
        )
    }
}

/// P-number rows ordered by `ℓ`, then `n`. A failed linear solve leaves
/// `p_mean` and `p_upper` empty and fills `error`.
pub fn ptable_rows(n_max: u32, ell_max: u32) -> CliResult<Vec<PTableLine>> {
    if n_max == 0 {
        return Err(CliError::Usage("n-max must be at least 1".into()));
    }
    let states: Vec<QuantumNumbers> = (0..=ell_max)
        .flat_map(|ell| (1..=n_max).map(move |n| (n, ell)))
        .map(|(n, ell)| quantum(n, ell))
        .collect::<CliResult<_>>()?;
    Ok(states
        .into_par_iter()
        .map(|q| {
            let base = PTableLine {
                n: q.n(),
                l: q.ell(),
                p_lower: q.n_plus_ell(),
                p_mean: None,
                p_upper: None,
                error: None,
            };
            match p_numbers(q) {
                Ok((p, _)) => PTableLine {
                    p_mean: Some(p.mean),
                    p_upper: Some(p.upper),
                    ..base
                },
                Err(err) => PTableLine {
                    error: Some(err.to_string().replace(',', ";")),
                    ..base
                },
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `E_11(b)` of `-½Δ - 1/(r+b)`.
    CutoffSweep,
    /// `E_10(v)` of `-Δ - v/(r+1)`.
    CouplingSweep,
}

impl Figure {
    pub fn from_number(number: u32) -> CliResult<Self> {
        match number {
            1 => Ok(Figure::CutoffSweep),
            2 => Ok(Figure::CouplingSweep),
            other => Err(CliError::Usage(format!("figure must be 1 or 2, got {other}"))),
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            Figure::CutoffSweep => (0.0, 5.0),
            Figure::CouplingSweep => (0.1, 10.0),
        }
    }

    pub fn quantum(self) -> QuantumNumbers {
        match self {
            Figure::CutoffSweep => QuantumNumbers::new(1, 1),
            Figure::CouplingSweep => QuantumNumbers::new(1, 0),
        }
        .expect("fixed quantum numbers are valid")
    }

    fn params(self, x: f64) -> CliResult<ProblemParams> {
        match self {
            Figure::CutoffSweep => params(0.5, 1.0, x),
            Figure::CouplingSweep => params(1.0, x, 1.0),
        }
    }

    fn grid(self, lo: f64, hi: f64, points: usize) -> Vec<f64> {
        match self {
            Figure::CutoffSweep => linear_grid(lo, hi, points),
            Figure::CouplingSweep => log_grid(lo, hi, points),
        }
    }
}

/// One abscissa of a figure series: the envelope energies at `P^L`, `P^M`
/// and `P^U` together with the oracle value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    #[serde(serialize_with = "crate::record::rounded")]
    pub x: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub lower: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub mean: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub upper: f64,
    #[serde(serialize_with = "crate::record::rounded")]
    pub oracle: f64,
    /// The certified bracket's clamped mean.
    #[serde(serialize_with = "crate::record::rounded")]
    pub mean_estimate: f64,
}

impl Table for FigureRow {
    fn header() -> &'static str {
        "x,lower,mean,upper,oracle,mean_estimate"
    }

    fn csv_row(&self) -> String {
        [
            self.x,
            self.lower,
            self.mean,
            self.upper,
            self.oracle,
            self.mean_estimate,
        ]
        .map(format_number)
        .join(",")
    }
}

pub fn figure_rows(
    figure: Figure,
    lo: f64,
    hi: f64,
    points: usize,
    settings: OracleSettings,
) -> CliResult<Vec<FigureRow>> {
    if points < 2 {
        return Err(CliError::Usage("need at least 2 points".into()));
    }
    let valid = match figure {
        Figure::CutoffSweep => lo >= 0.0 && lo < hi,
        Figure::CouplingSweep => lo > 0.0 && lo < hi,
    };
    if !valid || !hi.is_finite() {
        return Err(CliError::Usage(format!("invalid range [{lo}, {hi}]")));
    }
    let q = figure.quantum();
    let (p, _) = p_numbers(q)?;
    figure
        .grid(lo, hi, points)
        .into_par_iter()
        .map(|x| {
            let params = figure.params(x)?;
            let scaled = scale_reduce(&params);
            let envelope =
                |p: f64| -> CliResult<f64> { Ok(scaled.restore(envelope_energy(p, 1.0, scaled.b_reduced)?)) };
            Ok(FigureRow {
                x,
                lower: envelope(p.lower)?,
                mean: envelope(p.mean)?,
                upper: envelope(p.upper)?,
                oracle: oracle_energy(q, &params, settings)?,
                mean_estimate: bracket_for(q, &params)?.mean_estimate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_bounds_collapse() {
        let record = bounds_record(
            quantum(1, 0).unwrap(),
            &params(1.0, 1.0, 0.0).unwrap(),
            false,
            OracleSettings::default(),
        )
        .unwrap();
        assert_eq!(record.lower, -0.25);
        assert_eq!(record.upper, -0.25);
        assert_eq!(record.mean, -0.25);
    }

    #[test]
    fn coulomb_curve_point() {
        let rows = curve_rows(&CurveRequest {
            q: quantum(1, 0).unwrap(),
            b: 0.0,
            r_min: 2.0,
            r_max: 8.0,
            points: 3,
            choice: PChoice::Lower,
        })
        .unwrap();
        assert_eq!(rows[0].r, 2.0);
        assert!((rows[0].v - 1.0).abs() < 1e-15);
        assert!((rows[0].energy + 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut req = CurveRequest {
            q: quantum(1, 0).unwrap(),
            b: 1.0,
            r_min: 2.0,
            r_max: 1.0,
            points: 10,
            choice: PChoice::Lower,
        };
        assert!(matches!(curve_rows(&req), Err(CliError::Usage(_))));
        req.r_max = 3.0;
        req.points = 1;
        assert!(matches!(curve_rows(&req), Err(CliError::Usage(_))));
        assert!(matches!(Figure::from_number(3), Err(CliError::Usage(_))));
        assert!(matches!(ptable_rows(0, 2), Err(CliError::Usage(_))));
    }

    #[test]
    fn grids_hit_both_ends() {
        let g = log_grid(0.1, 10.0, 5);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[4], 10.0);
        assert!((g[2] - 1.0).abs() < 1e-14);
        assert_eq!(linear_grid(0.0, 5.0, 6), vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
    }
}
