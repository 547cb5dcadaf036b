//! Exact test cases from the polynomial map G(z) = z + βz².
//!
//! For |β| small G is star-like about 0, its boundary has polar angle
//! h(t) = t + arg(1 + βe^{it}) and radius |1 + βe^{it}|, so
//! f(θ) = log|1 + βe^{i h⁻¹(θ)}| has a known boundary correspondence h.

use serde::Serialize;

use crate::catalog::{
    invert_polar_angle, log_radius, polar_angle, polar_angle_derivative, FunctionSpec, MAX_BETA,
};
use crate::error::{Error, Result};
use crate::grid::{node, GridFunction};
use crate::homeo::CircleHomeomorphism;
use crate::series::analyze;

/// Samples used for the trigonometric fit of f.
pub const FIT_SAMPLES: usize = 512;
/// Fitted coefficients at or below this magnitude are dropped.
pub const FIT_THRESHOLD: f64 = 1e-18;
const STARLIKE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct GroundTruth {
    pub beta: f64,
    /// Trigonometric polynomial fit of f.
    pub f: FunctionSpec,
    /// sup-distance between the fit and the exact f on a check grid.
    pub fit_error: f64,
}

impl GroundTruth {
    /// The exact f, evaluated by inverting the polar angle.
    pub fn exact_spec(&self) -> FunctionSpec {
        FunctionSpec::LogRadiusOfMap { beta: self.beta }
    }

    /// h(t_j) = t_j + arg(1 + βe^{it_j}).
    pub fn h_exact(&self, n: usize) -> Result<CircleHomeomorphism> {
        let beta = self.beta;
        CircleHomeomorphism::from_fn(n, |t| polar_angle(beta, t))
    }
}

/// min over the circle of Re(zG'(z)/G(z)); positive means star-like about 0.
pub fn starlike_margin(beta: f64) -> f64 {
    (0..STARLIKE_SAMPLES)
        .map(|j| polar_angle_derivative(beta, node(j, STARLIKE_SAMPLES)))
        .fold(f64::INFINITY, f64::min)
}

pub fn synthesize_ground_truth(beta: f64) -> Result<GroundTruth> {
    if !beta.is_finite() || beta.abs() > MAX_BETA {
        return Err(Error::InvalidParams(format!(
            "beta must satisfy |beta| ≤ {MAX_BETA}, got {beta}"
        )));
    }
    let min_value = starlike_margin(beta);
    if min_value <= 0.0 {
        return Err(Error::NotStarlike { beta, min_value });
    }

    let samples = GridFunction::from_fn(FIT_SAMPLES, |theta| {
        log_radius(beta, invert_polar_angle(beta, theta))
    })?;
    let terms = analyze(&samples).to_real_terms(FIT_THRESHOLD);
    let f = FunctionSpec::TrigPoly { terms };

    let exact = FunctionSpec::LogRadiusOfMap { beta }.evaluator()?;
    let fit = f.evaluator()?;
    let check = 3 * FIT_SAMPLES + 1;
    let fit_error = (0..check)
        .map(|j| {
            let t = node(j, check);
            (fit.eval(t) - exact.eval(t)).abs()
        })
        .fold(0.0, f64::max);

    Ok(GroundTruth { beta, f, fit_error })
}
