use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::FunctionSpec;
use crate::error::{Error, Result};
use crate::solver::SolverParams;

/// Which diagnostics run after the solve. All are on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Checks {
    pub conjugate_identity: bool,
    pub total_variation: bool,
    pub log_modulus: bool,
    pub decay: bool,
    pub sobolev: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Self {
            conjugate_identity: true,
            total_variation: true,
            log_modulus: true,
            decay: true,
            sobolev: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// sup |K[f∘h] − (h − id − mean)|.
    pub identity: f64,
    /// |Stieltjes pairing − Σ|c_k|²|k||.
    pub stieltjes_gap: f64,
    /// Slack on TV(h − id) ≤ 4π.
    pub variation_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-8,
            stieltjes_gap: 1e-4,
            variation_slack: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub function: FunctionSpec,
    #[serde(default)]
    pub solver: SolverParams,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
}

fn default_output_dir() -> String {
    "out".into()
}

impl ExperimentConfig {
    pub fn new(function: FunctionSpec, solver: SolverParams) -> Self {
        Self {
            function,
            solver,
            checks: Checks::default(),
            tolerances: Tolerances::default(),
            output_dir: default_output_dir(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let wrap = |e: Error| Error::Config(e.to_string());
        self.function.validate().map_err(wrap)?;
        self.solver.validate().map_err(wrap)?;
        let t = &self.tolerances;
        if [t.identity, t.stieltjes_gap, t.variation_slack]
            .iter()
            .any(|x| !(x.is_finite() && *x >= 0.0))
        {
            return Err(Error::Config(
                "tolerances must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ExperimentConfig::from_json(
            r#"{"function": {"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0]]}}}"#,
        )
        .unwrap();
        assert_eq!(cfg.solver, SolverParams::default());
        assert_eq!(cfg.checks, Checks::default());
        assert_eq!(cfg.tolerances.identity, 1e-8);
        assert_eq!(cfg.tolerances.stieltjes_gap, 1e-4);
        assert_eq!(cfg.output_dir, "out");
    }

    #[test]
    fn config_errors() {
        for text in [
            r#"{"function": {"kind": "bessel", "params": {}}}"#,
            r#"{"function": {"kind": "trig_poly", "params": {"terms": []}}, "solver": {"n": 1000}}"#,
            r#"{"function": {"kind": "trig_poly", "params": {"terms": []}}, "extra": 1}"#,
            r#"{"function": {"kind": "trig_poly", "params": {"terms": []}}, "tolerances": {"identity": -1}}"#,
            "not json",
        ] {
            assert!(
                matches!(ExperimentConfig::from_json(text), Err(Error::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn round_trips_through_json() {
        let cfg = ExperimentConfig::new(FunctionSpec::cosine(), SolverParams::with_grid(512));
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }
}
