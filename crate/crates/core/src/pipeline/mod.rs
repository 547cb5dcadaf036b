//! Experiment orchestration: config in, report and series files out.
//!
//! `report.json` holds `{"report": …, "timestamps": …}`; the report payload is
//! a deterministic function of the config. `series.csv` has the columns
//! `t, h, f_of_h, conjugate, residual`, one row per grid node.

pub mod config;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::analysis::{
    decay_profile, fejer_conjugate_sup, log_modulus_statistic, sobolev_band_sums, sobolev_half,
    spectral_conjugate, stieltjes_pairing, stieltjes_pairing_extrapolated, total_variation,
};
use crate::catalog::{EpsilonRule, FunctionSpec};
use crate::conjugation::{conjugate_grid, partial_sum};
use crate::error::{Error, Result};
use crate::grid::{check_grid_size, node, GridFunction};
use crate::ground_truth::GroundTruth;
use crate::homeo::CircleHomeomorphism;
use crate::series::analyze;
use crate::solver::{branch_winding, compose, residual_profile, solve_boundary_correspondence};

pub use config::{Checks, ExperimentConfig, Tolerances};
pub use report::{
    CheckResults, DecayCheck, IdentityCheck, Mode, ReportFile, SobolevCheck, SolveSummary,
    Timestamps, VariationCheck, VerificationReport, VARIATION_BOUND,
};

pub const REPORT_FILE: &str = "report.json";
pub const SERIES_FILE: &str = "series.csv";
pub const SERIES_COLUMNS: [&str; 5] = ["t", "h", "f_of_h", "conjugate", "residual"];

/// Exit status for configuration errors.
pub const EXIT_CONFIG: i32 = 4;
/// Exit status for any other failure (I/O, numerical breakdown).
pub const EXIT_ERROR: i32 = 1;

/// Per-node samples written to `series.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    pub t: Vec<f64>,
    pub h: Vec<f64>,
    pub f_of_h: Vec<f64>,
    pub conjugate: Vec<f64>,
    pub residual: Vec<f64>,
}

impl SeriesTable {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(SERIES_COLUMNS)?;
        for j in 0..self.len() {
            w.write_record(
                [
                    self.t[j],
                    self.h[j],
                    self.f_of_h[j],
                    self.conjugate[j],
                    self.residual[j],
                ]
                .iter()
                .map(|x| x.to_string()),
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: VerificationReport,
    pub series: SeriesTable,
    pub timestamps: Timestamps,
}

impl RunOutput {
    /// Writes `report.json` and `series.csv` into `dir`, creating it if needed.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let report = dir.join(REPORT_FILE);
        let file = ReportFile {
            report: &self.report,
            timestamps: self.timestamps,
        };
        fs::write(&report, serde_json::to_string_pretty(&file)? + "\n")?;
        let series = dir.join(SERIES_FILE);
        self.series.write_csv(&series)?;
        Ok((report, series))
    }

    pub fn report_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ReportFile {
            report: &self.report,
            timestamps: self.timestamps,
        })?)
    }
}

fn unix_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Solves for h and runs every enabled check. Non-convergence is not an
/// error: the checks run on the best iterate and the report says so.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let started = unix_ms();
    let out = solve_boundary_correspondence(&cfg.function, &cfg.solver)?;
    let solve = SolveSummary {
        residual: out.residual,
        iterations: out.iterations,
        converged: out.converged,
        constant_c: out.constant_c,
        final_damping: out.final_damping,
        repairs: out.repairs,
        branch_winding: branch_winding(&cfg.function, &out.h)?,
    };
    let (checks, series) = evaluate(cfg, &out.h)?;
    Ok(finish(
        Mode::Solve,
        cfg,
        out.h.n(),
        solve,
        checks,
        series,
        started,
    ))
}

/// Runs the checks on a given h instead of solving for it.
pub fn verify_homeomorphism(cfg: &ExperimentConfig, h: &CircleHomeomorphism) -> Result<RunOutput> {
    cfg.validate()?;
    let started = unix_ms();
    let (checks, series) = evaluate(cfg, h)?;
    let residual = series.residual.iter().fold(0.0, |m: f64, r| m.max(r.abs()));
    let solve = SolveSummary {
        residual,
        iterations: 0,
        converged: residual <= cfg.solver.tol,
        constant_c: -h.mean_displacement(),
        final_damping: 0.0,
        repairs: 0,
        branch_winding: branch_winding(&cfg.function, h)?,
    };
    Ok(finish(
        Mode::Verify,
        cfg,
        h.n(),
        solve,
        checks,
        series,
        started,
    ))
}

fn finish(
    mode: Mode,
    cfg: &ExperimentConfig,
    n: usize,
    solve: SolveSummary,
    checks: CheckResults,
    series: SeriesTable,
    started: u64,
) -> RunOutput {
    let passed = solve.converged && checks.all_passed();
    RunOutput {
        report: VerificationReport {
            mode,
            config: cfg.clone(),
            n,
            solve,
            checks,
            passed,
        },
        series,
        timestamps: Timestamps {
            started_unix_ms: started,
            finished_unix_ms: unix_ms(),
        },
    }
}

fn evaluate(
    cfg: &ExperimentConfig,
    h: &CircleHomeomorphism,
) -> Result<(CheckResults, SeriesTable)> {
    let n = h.n();
    let tol = &cfg.tolerances;
    let fh = compose(&cfg.function, h)?;
    let conj = GridFunction::real(conjugate_grid(fh.real_values()?)?)?;
    let resid = residual_profile(&cfg.function, h)?;
    let on = &cfg.checks;

    let conjugate_identity = on.conjugate_identity.then(|| {
        let sup_error = resid.iter().fold(0.0, |m: f64, r| m.max(r.abs()));
        IdentityCheck {
            sup_error,
            tolerance: tol.identity,
            passed: sup_error <= tol.identity,
        }
    });

    let total_variation = if on.total_variation {
        let h_minus_id = total_variation(&h.displacement())?;
        Some(VariationCheck {
            conjugate: total_variation(&conj)?,
            h_minus_id,
            bound: VARIATION_BOUND,
            passed: h_minus_id <= VARIATION_BOUND + tol.variation_slack,
        })
    } else {
        None
    };

    let log_modulus = if on.log_modulus {
        Some(log_modulus_statistic(h)?)
    } else {
        None
    };

    let spectrum = analyze(&fh);
    let decay = on.decay.then(|| DecayCheck {
        max_freq: n / 4,
        profile: decay_profile(&partial_sum(&spectrum, n / 4)),
    });

    let sobolev = if on.sobolev {
        let target = sobolev_half(&spectrum);
        let gt = spectral_conjugate(&fh)?;
        let pairing = stieltjes_pairing_extrapolated(&fh, &gt)?;
        let gap = (pairing - target).abs();
        Some(SobolevCheck {
            sobolev_half: target,
            band_sums: sobolev_band_sums(&spectrum),
            stieltjes_pairing: pairing,
            stieltjes_left: stieltjes_pairing(&fh, &gt)?,
            gap,
            tolerance: tol.stieltjes_gap,
            passed: gap <= tol.stieltjes_gap,
        })
    } else {
        None
    };

    let series = SeriesTable {
        t: (0..n).map(|j| node(j, n)).collect(),
        h: h.values().to_vec(),
        f_of_h: fh.into_real()?,
        conjugate: conj.into_real()?,
        residual: resid,
    };
    let checks = CheckResults {
        conjugate_identity,
        total_variation,
        log_modulus,
        decay,
        sobolev,
    };
    Ok((checks, series))
}

/// Reads the `h` column of a series CSV (any file with `t` and `h` headers).
/// The `t` column must match the canonical grid.
pub fn read_h_series(path: impl AsRef<Path>) -> Result<CircleHomeomorphism> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Config(format!("series file has no `{name}` column")))
    };
    let (ti, hi) = (col("t")?, col("h")?);
    let mut t = Vec::new();
    let mut h = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let parse = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Config(format!("bad number in row {}", t.len() + 1)))
        };
        let (tv, hv) = (parse(ti)?, parse(hi)?);
        t.push(tv);
        h.push(hv);
    }
    let n = h.len();
    check_grid_size(n).map_err(|e| Error::Config(e.to_string()))?;
    if let Some(j) = (0..n).find(|&j| (t[j] - node(j, n)).abs() > 1e-12) {
        return Err(Error::Config(format!(
            "t column departs from the grid at row {}",
            j + 1
        )));
    }
    CircleHomeomorphism::from_values(h)
}

/// Writes the exact h of a ground-truth case as a `t,h` CSV.
pub fn write_h_series(h: &CircleHomeomorphism, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "h"])?;
    let n = h.n();
    for (j, v) in h.values().iter().enumerate() {
        w.write_record([node(j, n).to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Ground-truth bundle: the fitted f spec, plus the exact h on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct GroundTruthExport {
    pub beta: f64,
    pub fit_error: f64,
    pub function: FunctionSpec,
    pub exact_function: FunctionSpec,
}

impl From<&GroundTruth> for GroundTruthExport {
    fn from(g: &GroundTruth) -> Self {
        Self {
            beta: g.beta,
            fit_error: g.fit_error,
            function: g.f.clone(),
            exact_function: g.exact_spec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterexampleRow {
    #[serde(rename = "N")]
    pub order: usize,
    pub computed_sup: f64,
    pub closed_form: f64,
}

/// Grid used for an order-N row when none is given: at least 4N and 4096.
pub fn counterexample_grid(order: usize) -> usize {
    (4 * order).max(4096).next_power_of_two()
}

/// One row per N in `orders` (strictly ascending, each ≥ 2).
pub fn run_counterexample(
    rule: &EpsilonRule,
    orders: &[usize],
    grid: Option<usize>,
) -> Result<Vec<CounterexampleRow>> {
    if orders.is_empty() {
        return Err(Error::InvalidParams("no orders given".into()));
    }
    if orders.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "orders must be strictly ascending".into(),
        ));
    }
    rule.validate(*orders.last().unwrap())?;
    orders
        .iter()
        .map(|&order| {
            let n = grid.unwrap_or_else(|| counterexample_grid(order));
            let (computed_sup, closed_form) = fejer_conjugate_sup(rule, order, n)?;
            Ok(CounterexampleRow {
                order,
                computed_sup,
                closed_form,
            })
        })
        .collect()
}

pub fn write_counterexample_csv(rows: &[CounterexampleRow], path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["N", "computed_sup", "closed_form"])?;
    for r in rows {
        w.write_record([
            r.order.to_string(),
            r.computed_sup.to_string(),
            r.closed_form.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Maps an error to the CLI exit status.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::UnknownKind(_)
        | Error::InvalidSpec(_)
        | Error::InvalidEpsilonRule(_)
        | Error::InvalidParams(_)
        | Error::InvalidGridSize(_)
        | Error::NotStarlike { .. }
        | Error::Json(_) => EXIT_CONFIG,
        _ => EXIT_ERROR,
    }
}
