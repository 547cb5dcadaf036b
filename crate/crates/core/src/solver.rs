//! Boundary correspondence for the star-like domain bounded by
//! γ(t) = e^{f(t) + it}.
//!
//! A conformal map G of the disk onto that domain with G(0) = 0 satisfies
//! G(e^{it}) = e^{f(h(t)) + i h(t)} for a circle homeomorphism h, and
//! log(G(z)/z) is analytic, so h − id is (up to a constant) the conjugate of
//! f∘h. On the grid this is the fixed-point equation
//!
//! ```text
//! h(t_j) − t_j = K[f∘h](t_j),        K = mean-zero conjugation
//! ```
//!
//! solved here by damped Theodorsen iteration with continuation in the
//! amplitude of f.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{Evaluator, FunctionSpec};
use crate::conjugation::conjugate_grid;
use crate::error::{Error, Result};
use crate::grid::{check_grid_size, node, GridFunction};
use crate::homeo::{repair_monotone, CircleHomeomorphism};

/// Residual target for the intermediate continuation stages.
pub const STAGE_TOL: f64 = 1e-6;
/// Damping is halved when the residual exceeds this multiple of the best so far.
pub const BACKOFF_GROWTH: f64 = 2.0;
/// Damping is also halved after this many iterations without a new best residual.
pub const STALL_ITERS: usize = 50;
pub const MIN_DAMPING: f64 = 1.0 / 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    pub n: usize,
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub continuation_steps: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            n: 2048,
            damping: 0.5,
            tol: 1e-10,
            max_iter: 20_000,
            continuation_steps: 4,
        }
    }
}

impl SolverParams {
    pub fn with_grid(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_grid_size(self.n).map_err(|_| {
            Error::InvalidParams(format!("n = {} is not a power of two ≥ 8", self.n))
        })?;
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "damping {} outside (0, 1]",
                self.damping
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "tol {} must be positive",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParams("max_iter must be at least 1".into()));
        }
        if self.continuation_steps == 0 {
            return Err(Error::InvalidParams(
                "continuation_steps must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub h: CircleHomeomorphism,
    /// sup-norm of the fixed-point residual of `h` for the full f.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// −mean(h − id): the additive constant relating h − id to the conjugate.
    pub constant_c: f64,
    pub final_damping: f64,
    /// Number of iterates that needed monotone repair.
    pub repairs: usize,
}

/// Samples of γ(t_j) = e^{f(t_j)} e^{i t_j}.
pub fn build_curve(f: &FunctionSpec, n: usize) -> Result<Vec<Complex64>> {
    check_grid_size(n)?;
    let ev = f.evaluator()?;
    Ok((0..n)
        .map(|j| {
            let t = node(j, n);
            Complex64::from_polar(ev.eval(t).exp(), t)
        })
        .collect())
}

/// Discrete winding number of a closed polygon about 0 (unrounded).
pub fn winding_number(points: &[Complex64]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|j| (points[(j + 1) % n] / points[j]).arg())
        .sum::<f64>()
        / TAU
}

fn compose_values(ev: &Evaluator, u: &[f64], scale: f64) -> Vec<f64> {
    let n = u.len();
    u.iter()
        .enumerate()
        .map(|(j, x)| scale * ev.eval(node(j, n) + x))
        .collect()
}

/// (f∘h)(t_j), evaluating f exactly at the off-grid points h(t_j).
pub fn compose(f: &FunctionSpec, h: &CircleHomeomorphism) -> Result<GridFunction> {
    let ev = f.evaluator()?;
    GridFunction::real(h.values().iter().map(|&x| ev.eval(x)).collect())
}

/// Pointwise residual (h(t_j) − t_j − m) − K[f∘h](t_j), m = mean(h − id).
pub fn residual_profile(f: &FunctionSpec, h: &CircleHomeomorphism) -> Result<Vec<f64>> {
    let fh = compose(f, h)?;
    let conj = conjugate_grid(fh.real_values()?)?;
    let u = h.displacement_values();
    let m = u.iter().sum::<f64>() / u.len() as f64;
    Ok(u.iter().zip(&conj).map(|(x, k)| x - m - k).collect())
}

/// sup_j |(h(t_j) − t_j − m) − K[f∘h](t_j)|.
pub fn residual(f: &FunctionSpec, h: &CircleHomeomorphism) -> Result<f64> {
    Ok(residual_profile(f, h)?
        .iter()
        .fold(0.0, |m, x| m.max(x.abs())))
}

/// Winding number of e^{i((h − id − m) − K[f∘h])}. Zero means the integer
/// branch index relating log(G(z)/z) to f∘h + i(h − id) is constant.
pub fn branch_winding(f: &FunctionSpec, h: &CircleHomeomorphism) -> Result<f64> {
    let phase: Vec<Complex64> = residual_profile(f, h)?
        .into_iter()
        .map(|r| Complex64::from_polar(1.0, r))
        .collect();
    Ok(winding_number(&phase))
}

struct Iterate {
    u: Vec<f64>,
    residual: f64,
}

/// Solves h − id = K[f∘h] by damped fixed-point iteration
/// u ← (1 − d)u + d·K[λf∘(id + u)] over λ = 1/steps, …, 1.
///
/// Non-convergence is reported through `converged = false` with the best
/// iterate; every returned `h` is a valid homeomorphism.
pub fn solve_boundary_correspondence(
    f: &FunctionSpec,
    params: &SolverParams,
) -> Result<SolveOutcome> {
    params.validate()?;
    let ev = f.evaluator()?;
    let n = params.n;
    let steps = params.continuation_steps;

    let mut u = vec![0.0; n];
    let mut damping = params.damping;
    let mut iterations = 0;
    let mut repairs = 0;
    let mut best = Iterate {
        u: u.clone(),
        residual: f64::INFINITY,
    };

    'stages: for stage in 1..=steps {
        let lambda = stage as f64 / steps as f64;
        let last = stage == steps;
        let stage_tol = if last {
            params.tol
        } else {
            params.tol.max(STAGE_TOL)
        };
        best.residual = f64::INFINITY;
        let mut since_best = 0;

        loop {
            let image = conjugate_grid(&compose_values(&ev, &u, lambda))?;
            let r = u
                .iter()
                .zip(&image)
                .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
            if r < best.residual {
                best = Iterate {
                    u: u.clone(),
                    residual: r,
                };
                since_best = 0;
            } else {
                since_best += 1;
            }
            if r <= stage_tol {
                continue 'stages;
            }
            if iterations >= params.max_iter {
                break 'stages;
            }
            iterations += 1;
            let stalled = since_best >= STALL_ITERS && damping > MIN_DAMPING;
            if !r.is_finite() || r > BACKOFF_GROWTH * best.residual || stalled {
                since_best = 0;
                u.clone_from(&best.u);
                damping = (0.5 * damping).max(MIN_DAMPING);
                continue;
            }
            for (x, y) in u.iter_mut().zip(&image) {
                *x = (1.0 - damping) * *x + damping * y;
            }
            if repair_monotone(&mut u)? {
                repairs += 1;
            }
        }
    }

    let h = CircleHomeomorphism::from_displacement(&best.u)?;
    let res = residual(f, &h)?;
    Ok(SolveOutcome {
        constant_c: -h.mean_displacement(),
        converged: res <= params.tol,
        residual: res,
        iterations,
        final_damping: damping,
        repairs,
        h,
    })
}
