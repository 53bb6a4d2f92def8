use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::compute::{
    bounds_record, curve_rows, exact_record, figure_rows, params, ptable_rows, quantum, relative_discrepancy,
    CurveRequest, Figure, OracleSettings, PChoice,
};
use crate::error::{CliError, CliResult};
use crate::record::{write_table, Format};
use crate::verify::{self, Grid, Perturbation};

#[derive(Debug, Parser)]
#[command(name = "cutoff-coulomb", version, about = "Eigenvalue bounds for -ωΔ - v/(r+b)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, env = "CUTOFF_COULOMB_FORMAT", default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Oracle {
    /// Override the oracle's radial grid size.
    #[arg(long, env = "CUTOFF_COULOMB_GRID_POINTS")]
    pub grid_points: Option<usize>,
}

impl Oracle {
    fn settings(&self) -> OracleSettings {
        OracleSettings {
            grid_points: self.grid_points,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds with the mean estimate for one state.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, env = "CUTOFF_COULOMB_OMEGA", default_value_t = 1.0)]
        omega: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, env = "CUTOFF_COULOMB_WITH_ORACLE")]
        with_oracle: bool,
        #[command(flatten)]
        oracle: Oracle,
        #[command(flatten)]
        output: Output,
    },
    /// Approximate energy curve (v, E) for fixed b.
    Curve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, value_enum, default_value = "mean")]
        p_choice: PChoice,
        #[command(flatten)]
        output: Output,
    },
    /// P-number table from the linear-potential spectrum.
    Ptable {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 4)]
        l_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Exact S-wave eigenvalue next to the oracle value.
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        oracle: Oracle,
        #[command(flatten)]
        output: Output,
    },
    /// Data series for the b-sweep (1) or v-sweep (2) plots.
    Figure {
        number: u32,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 26)]
        points: usize,
        #[command(flatten)]
        oracle: Oracle,
        #[command(flatten)]
        output: Output,
    },
    /// Run the property checks over a parameter grid and print a JSON report.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        l_max: u32,
        /// Comma-separated couplings.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [0.5, 1.0, 4.0])]
        v: Vec<f64>,
        /// Comma-separated cutoffs.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [0.0, 0.1, 1.0, 10.0])]
        b: Vec<f64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true, env = "CUTOFF_COULOMB_PERTURB_UPPER")]
        perturb_upper: Option<f64>,
        #[command(flatten)]
        oracle: Oracle,
    },
}

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
pub fn execute<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> CliResult<()> {
    match cli.command {
        Command::Bounds {
            n,
            l,
            omega,
            v,
            b,
            with_oracle,
            oracle,
            output,
        } => {
            let record = bounds_record(quantum(n, l)?, &params(omega, v, b)?, with_oracle, oracle.settings())?;
            write_table(out, std::slice::from_ref(&record), output.format)?;
            if let Some(message) = record.error {
                return Err(CliError::Incomplete(message));
            }
        }
        Command::Curve {
            n,
            l,
            b,
            r_min,
            r_max,
            points,
            p_choice,
            output,
        } => {
            let rows = curve_rows(&CurveRequest {
                q: quantum(n, l)?,
                b,
                r_min,
                r_max,
                points,
                choice: p_choice,
            })?;
            write_table(out, &rows, output.format)?;
        }
        Command::Ptable { n_max, l_max, output } => {
            let rows = ptable_rows(n_max, l_max)?;
            write_table(out, &rows, output.format)?;
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                writeln!(err, "{failed} rows without a linear-potential eigenvalue")?;
            }
        }
        Command::Exact {
            n,
            v,
            b,
            oracle,
            output,
        } => {
            let record = exact_record(n, &params(1.0, v, b)?, oracle.settings())?;
            write_table(out, std::slice::from_ref(&record), output.format)?;
            if let (Some(exact), Some(oracle)) = (record.exact_swave, record.oracle) {
                writeln!(
                    err,
                    "relative discrepancy exact vs oracle: {:e}",
                    relative_discrepancy(oracle, exact)
                )?;
            }
        }
        Command::Figure {
            number,
            from,
            to,
            points,
            oracle,
            output,
        } => {
            let figure = Figure::from_number(number)?;
            let (lo, hi) = figure.default_range();
            let rows = figure_rows(figure, from.unwrap_or(lo), to.unwrap_or(hi), points, oracle.settings())?;
            write_table(out, &rows, output.format)?;
        }
        Command::Verify {
            n_max,
            l_max,
            v,
            b,
            report,
            perturb_upper,
            oracle,
        } => {
            let perturbation = perturb_upper.map(|upper_factor| Perturbation { upper_factor });
            let result = verify::run(Grid { n_max, l_max, v, b }, oracle.settings(), perturbation)?;
            let json = serde_json::to_string_pretty(&result)?;
            match report {
                Some(path) => std::fs::write(path, json + "\n")?,
                None => writeln!(out, "{json}")?,
            }
            if !result.passed {
                let failed: Vec<&str> = result.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
