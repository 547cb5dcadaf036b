use std::f64::consts::TAU;

use serde::Serialize;

use crate::analysis::{DecayProfile, LogModulus};
use crate::pipeline::config::ExperimentConfig;

/// Upper bound on TV(h − id) for a degree-one homeomorphism: TV(h) = 2π plus TV(id) = 2π.
pub const VARIATION_BOUND: f64 = 2.0 * TAU;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub constant_c: f64,
    pub final_damping: f64,
    pub repairs: usize,
    /// Winding number of the branch index; zero when it is constant.
    pub branch_winding: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub sup_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationCheck {
    /// TV of the spectral conjugate of f∘h.
    pub conjugate: f64,
    /// TV of h − id.
    pub h_minus_id: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayCheck {
    /// Largest frequency included, n/4.
    pub max_freq: usize,
    pub profile: DecayProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolevCheck {
    pub sobolev_half: f64,
    pub band_sums: Vec<f64>,
    /// Extrapolated Stieltjes sum of f∘h against its conjugate.
    pub stieltjes_pairing: f64,
    /// The plain left-node sum, for reference.
    pub stieltjes_left: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// One entry per diagnostic; disabled checks serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResults {
    pub conjugate_identity: Option<IdentityCheck>,
    pub total_variation: Option<VariationCheck>,
    pub log_modulus: Option<LogModulus>,
    pub decay: Option<DecayCheck>,
    pub sobolev: Option<SobolevCheck>,
}

impl CheckResults {
    /// True when every enabled check with a pass criterion passed.
    pub fn all_passed(&self) -> bool {
        self.conjugate_identity.as_ref().is_none_or(|c| c.passed)
            && self.total_variation.as_ref().is_none_or(|c| c.passed)
            && self.sobolev.as_ref().is_none_or(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Solve,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub config: ExperimentConfig,
    pub n: usize,
    pub solve: SolveSummary,
    pub checks: CheckResults,
    pub passed: bool,
}

impl VerificationReport {
    /// 0 = converged and all checks passed, 2 = not converged, 3 = a check failed.
    pub fn exit_code(&self) -> i32 {
        if !self.solve.converged {
            2
        } else if !self.checks.all_passed() {
            3
        } else {
            0
        }
    }
}

/// Wall-clock times in unix milliseconds, kept apart from the report payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Timestamps {
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
}

/// The on-disk `report.json` layout.
#[derive(Debug, Clone, Serialize)]
pub struct ReportFile<'a> {
    pub report: &'a VerificationReport,
    pub timestamps: Timestamps,
}
