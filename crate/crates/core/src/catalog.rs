//! Analytic function catalog.
//!
//! Every entry is a continuous 2π-periodic real function that can be evaluated
//! exactly at arbitrary points, so compositions f∘h never interpolate f.
//!
//! Canonical JSON: `{"kind": <name>, "params": {...}}`, for example
//!
//! ```json
//! {"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0], [3, 0.0, 0.5]]}}
//! {"kind": "lacunary_sin", "params": {"epsilon_rule": {"name": "inv_log", "offset": 2}, "terms": 64}}
//! {"kind": "weierstrass_cos", "params": {"a": 0.5, "b": 3, "terms": 8}}
//! {"kind": "piecewise_linear", "params": {"nodes": [[0.0, 0.0], [3.14, 1.0]]}}
//! {"kind": "log_radius_of_map", "params": {"beta": 0.3}}
//! ```

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const KINDS: [&str; 5] = [
    "trig_poly",
    "lacunary_sin",
    "weierstrass_cos",
    "piecewise_linear",
    "log_radius_of_map",
];

/// Largest |β| accepted for the quadratic map z + βz².
pub const MAX_BETA: f64 = 0.3;

/// Positive nonincreasing weights ε(n), n ≥ 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum EpsilonRule {
    /// ε(n) = 1 / log(n + offset)
    InvLog { offset: f64 },
    /// ε(n) = 1 / log(log(n + offset))
    #[serde(rename = "inv_loglog")]
    InvLogLog { offset: f64 },
    /// ε(n) = value; only meaningful with a finite truncation.
    Constant { value: f64 },
    /// ε(n) = values[n − 1]
    Table { values: Vec<f64> },
}

impl EpsilonRule {
    pub fn inv_log(offset: f64) -> Self {
        Self::InvLog { offset }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::InvLog { .. } => "inv_log",
            Self::InvLogLog { .. } => "inv_loglog",
            Self::Constant { .. } => "constant",
            Self::Table { .. } => "table",
        }
    }

    fn raw(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Self::InvLog { offset } => 1.0 / (x + offset).ln(),
            Self::InvLogLog { offset } => 1.0 / (x + offset).ln().ln(),
            Self::Constant { value } => *value,
            Self::Table { values } => values.get(n - 1).copied().unwrap_or(f64::NAN),
        }
    }

    /// Checks positivity, finiteness and monotonicity of ε(1..=upto).
    pub fn validate(&self, upto: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidEpsilonRule(m));
        match self {
            Self::InvLog { offset } if !(offset.is_finite() && *offset > 0.0) => {
                return bad(format!("inv_log needs a finite offset > 0, got {offset}"))
            }
            Self::InvLogLog { offset }
                if !(offset.is_finite() && 1.0 + offset > std::f64::consts::E) =>
            {
                return bad(format!(
                    "inv_loglog needs 1 + offset > e, got offset {offset}"
                ))
            }
            Self::Table { values } if values.len() < upto => {
                return bad(format!("table has {} entries, {upto} needed", values.len()))
            }
            _ => {}
        }
        let mut prev = f64::INFINITY;
        for n in 1..=upto.max(1) {
            let e = self.raw(n);
            if !(e.is_finite() && e > 0.0) {
                return bad(format!("ε({n}) = {e} is not positive"));
            }
            if e > prev {
                return bad(format!("ε({n}) = {e} exceeds ε({}) = {prev}", n - 1));
            }
            prev = e;
        }
        Ok(())
    }

    /// ε(n) for n ≥ 1.
    pub fn eval(&self, n: usize) -> f64 {
        assert!(n >= 1, "ε is indexed from 1");
        self.raw(n)
    }
}

/// A catalog entry describing f analytically.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum FunctionSpec {
    /// Σ a_k cos kt + b_k sin kt over `(k, a_k, b_k)`.
    TrigPoly { terms: Vec<(u32, f64, f64)> },
    /// Σ_{n=1}^{terms} ε(n)/n · sin nt
    LacunarySin {
        epsilon_rule: EpsilonRule,
        terms: usize,
    },
    /// Σ_{m=0}^{terms−1} a^m cos(b^m t)
    WeierstrassCos { a: f64, b: u32, terms: usize },
    /// Periodic linear interpolation through `(t, v)` nodes in [0, 2π).
    PiecewiseLinear { nodes: Vec<(f64, f64)> },
    /// log |G(e^{is})| at polar angle θ = arg G(e^{is}) for G(z) = z + βz².
    LogRadiusOfMap { beta: f64 },
}

#[derive(Deserialize)]
#[serde(
    tag = "kind",
    content = "params",
    rename_all = "snake_case",
    deny_unknown_fields
)]
enum RawSpec {
    TrigPoly {
        terms: Vec<(u32, f64, f64)>,
    },
    LacunarySin {
        epsilon_rule: EpsilonRule,
        terms: usize,
    },
    WeierstrassCos {
        a: f64,
        b: u32,
        terms: usize,
    },
    PiecewiseLinear {
        nodes: Vec<(f64, f64)>,
    },
    LogRadiusOfMap {
        beta: f64,
    },
}

impl From<RawSpec> for FunctionSpec {
    fn from(raw: RawSpec) -> Self {
        match raw {
            RawSpec::TrigPoly { terms } => Self::TrigPoly { terms },
            RawSpec::LacunarySin {
                epsilon_rule,
                terms,
            } => Self::LacunarySin {
                epsilon_rule,
                terms,
            },
            RawSpec::WeierstrassCos { a, b, terms } => Self::WeierstrassCos { a, b, terms },
            RawSpec::PiecewiseLinear { nodes } => Self::PiecewiseLinear { nodes },
            RawSpec::LogRadiusOfMap { beta } => Self::LogRadiusOfMap { beta },
        }
    }
}

impl<'de> Deserialize<'de> for FunctionSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(d)?;
        FunctionSpec::from_value(value).map_err(serde::de::Error::custom)
    }
}

impl FunctionSpec {
    pub fn zero() -> Self {
        Self::TrigPoly { terms: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        Self::TrigPoly {
            terms: vec![(0, c, 0.0)],
        }
    }

    pub fn cosine() -> Self {
        Self::TrigPoly {
            terms: vec![(1, 1.0, 0.0)],
        }
    }

    /// Parses the canonical JSON form, distinguishing unknown kinds from
    /// malformed parameters, and validates the result.
    pub fn from_value(value: Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidSpec("missing string field `kind`".into()))?;
        if !KINDS.contains(&kind) {
            return Err(Error::UnknownKind(kind.to_string()));
        }
        let raw: RawSpec =
            serde_json::from_value(value).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let spec = FunctionSpec::from(raw);
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_value(value)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::TrigPoly { .. } => KINDS[0],
            Self::LacunarySin { .. } => KINDS[1],
            Self::WeierstrassCos { .. } => KINDS[2],
            Self::PiecewiseLinear { .. } => KINDS[3],
            Self::LogRadiusOfMap { .. } => KINDS[4],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        match self {
            Self::TrigPoly { terms } => {
                if terms.iter().any(|t| !t.1.is_finite() || !t.2.is_finite()) {
                    return bad("trig_poly coefficients must be finite".into());
                }
            }
            Self::LacunarySin {
                epsilon_rule,
                terms,
            } => {
                if *terms == 0 {
                    return bad("lacunary_sin needs at least one term".into());
                }
                epsilon_rule.validate(*terms)?;
            }
            Self::WeierstrassCos { a, b, terms } => {
                if !a.is_finite() {
                    return bad("weierstrass_cos amplitude ratio must be finite".into());
                }
                if *b == 0 {
                    return bad("weierstrass_cos frequency ratio must be a positive integer".into());
                }
                if *terms == 0 {
                    return bad("weierstrass_cos needs at least one term".into());
                }
                if (*b as f64).powi(*terms as i32 - 1) > 2f64.powi(52) {
                    return bad("weierstrass_cos frequencies exceed exact integer range".into());
                }
            }
            Self::PiecewiseLinear { nodes } => {
                if nodes.is_empty() {
                    return bad("piecewise_linear needs at least one node".into());
                }
                if nodes.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
                    return bad("piecewise_linear nodes must be finite".into());
                }
                if nodes.iter().any(|(t, _)| *t < 0.0 || *t >= TAU) {
                    return bad("piecewise_linear node abscissae must lie in [0, 2π)".into());
                }
                if nodes.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return bad(
                        "piecewise_linear node abscissae must be strictly increasing".into(),
                    );
                }
            }
            Self::LogRadiusOfMap { beta } => {
                if !(beta.is_finite() && beta.abs() <= MAX_BETA) {
                    return bad(format!(
                        "log_radius_of_map needs |beta| ≤ {MAX_BETA}, got {beta}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Prepares a reusable evaluator (sorted terms, precomputed weights).
    pub fn evaluator(&self) -> Result<Evaluator> {
        self.validate()?;
        Ok(match self {
            Self::TrigPoly { terms } => {
                let mut t: Vec<(u32, f64, f64)> = terms.clone();
                t.sort_by_key(|x| x.0);
                Evaluator::Trig(t)
            }
            Self::LacunarySin {
                epsilon_rule,
                terms,
            } => Evaluator::Trig(
                (1..=*terms)
                    .map(|n| (n as u32, 0.0, epsilon_rule.eval(n) / n as f64))
                    .collect(),
            ),
            Self::WeierstrassCos { a, b, terms } => Evaluator::Weierstrass {
                amps: (0..*terms).map(|m| a.powi(m as i32)).collect(),
                freqs: (0..*terms).map(|m| (*b as f64).powi(m as i32)).collect(),
            },
            Self::PiecewiseLinear { nodes } => Evaluator::Linear(nodes.clone()),
            Self::LogRadiusOfMap { beta } => Evaluator::LogRadius(*beta),
        })
    }

    /// Pointwise values of the represented function.
    pub fn evaluate(&self, points: &[f64]) -> Result<Vec<f64>> {
        let e = self.evaluator()?;
        Ok(points.iter().map(|&t| e.eval(t)).collect())
    }
}

/// Precomputed form of a [`FunctionSpec`] for repeated evaluation.
#[derive(Debug, Clone)]
pub enum Evaluator {
    Trig(Vec<(u32, f64, f64)>),
    Weierstrass { amps: Vec<f64>, freqs: Vec<f64> },
    Linear(Vec<(f64, f64)>),
    LogRadius(f64),
}

impl Evaluator {
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        match self {
            Self::Trig(terms) => eval_trig(terms, t),
            Self::Weierstrass { amps, freqs } => amps
                .iter()
                .zip(freqs)
                .map(|(a, b)| a * (b * t).rem_euclid(TAU).cos())
                .sum(),
            Self::Linear(nodes) => eval_linear(nodes, t),
            Self::LogRadius(beta) => {
                let s = invert_polar_angle(*beta, t);
                log_radius(*beta, s)
            }
        }
    }
}

fn eval_trig(terms: &[(u32, f64, f64)], t: f64) -> f64 {
    // Powers of e^{it} by repeated multiplication over sorted frequencies.
    let z = Complex64::from_polar(1.0, t);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut k = 0u32;
    let mut acc = 0.0;
    for &(freq, a, b) in terms {
        if freq - k > 64 {
            zk = Complex64::from_polar(1.0, (freq as f64 * t).rem_euclid(TAU));
            k = freq;
        }
        while k < freq {
            zk *= z;
            k += 1;
        }
        acc += a * zk.re + b * zk.im;
    }
    acc
}

fn eval_linear(nodes: &[(f64, f64)], t: f64) -> f64 {
    if nodes.len() == 1 {
        return nodes[0].1;
    }
    // index of the first node with abscissa > t
    let i = nodes.partition_point(|&(x, _)| x <= t);
    let (left, right) = if i == 0 {
        let (x, v) = nodes[nodes.len() - 1];
        ((x - TAU, v), nodes[0])
    } else if i == nodes.len() {
        let (x, v) = nodes[0];
        (nodes[i - 1], (x + TAU, v))
    } else {
        (nodes[i - 1], nodes[i])
    };
    let w = (t - left.0) / (right.0 - left.0);
    left.1 + w * (right.1 - left.1)
}

/// Polar angle of G(e^{is}) = e^{is}(1 + βe^{is}), as a lift: s + arg(1 + βe^{is}).
pub fn polar_angle(beta: f64, s: f64) -> f64 {
    s + (beta * s.sin()).atan2(1.0 + beta * s.cos())
}

/// log |1 + βe^{is}| = log |G(e^{is})|.
pub fn log_radius(beta: f64, s: f64) -> f64 {
    0.5 * (1.0 + 2.0 * beta * s.cos() + beta * beta).ln()
}

/// d/ds of [`polar_angle`]: Re(zG'(z)/G(z)) at z = e^{is}.
pub fn polar_angle_derivative(beta: f64, s: f64) -> f64 {
    let z = Complex64::from_polar(beta, s);
    1.0 + (z / (1.0 + z)).re
}

/// Solves polar_angle(β, s) = θ for s (the angle is strictly increasing in s).
pub fn invert_polar_angle(beta: f64, theta: f64) -> f64 {
    if beta == 0.0 {
        return theta;
    }
    // |arg(1 + βe^{is})| ≤ asin|β| brackets the root.
    let w = beta.abs().asin() + 1e-12;
    let (mut lo, mut hi) = (theta - w, theta + w);
    let mut s = theta;
    for _ in 0..100 {
        let r = polar_angle(beta, s) - theta;
        if r == 0.0 {
            return s;
        }
        if r > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let next = s - r / polar_angle_derivative(beta, s);
        s = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-15 || r.abs() < 1e-16 {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cosine_values() {
        let v = FunctionSpec::cosine()
            .evaluate(&[0.0, PI / 2.0, PI])
            .unwrap();
        assert!((v[0] - 1.0).abs() < 1e-15);
        assert!(v[1].abs() < 1e-15);
        assert!((v[2] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn lacunary_vanishes_at_zero() {
        let f = FunctionSpec::LacunarySin {
            epsilon_rule: EpsilonRule::inv_log(2.0),
            terms: 1,
        };
        assert_eq!(f.evaluate(&[0.0]).unwrap()[0], 0.0);
    }

    #[test]
    fn weierstrass_at_zero_is_geometric_sum() {
        let f = FunctionSpec::WeierstrassCos {
            a: 0.5,
            b: 3,
            terms: 20,
        };
        // direct partial sum Σ_{m<20} 0.5^m
        let expected: f64 = (0..20).map(|m| 0.5f64.powi(m)).sum();
        let v = f.evaluate(&[0.0]).unwrap()[0];
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 1.999998092651367).abs() < 1e-14);
    }

    #[test]
    fn piecewise_linear_wraps() {
        let f = FunctionSpec::PiecewiseLinear {
            nodes: vec![(1.0, 0.0), (3.0, 2.0)],
        };
        let v = f.evaluate(&[2.0, 1.0, 3.0, 0.0, TAU - 0.5]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-15);
        assert_eq!(v[1], 0.0);
        assert_eq!(v[2], 2.0);
        // from (3, 2) to (1 + 2π, 0): slope −2/(2π − 2)
        let slope = -2.0 / (TAU - 2.0);
        assert!((v[3] - (2.0 + slope * (TAU - 3.0))).abs() < 1e-14);
        assert!((v[4] - (2.0 + slope * (TAU - 3.5))).abs() < 1e-14);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"kind": "lacunary_sin", "params": {"epsilon_rule": {"name": "inv_log", "offset": 2}, "terms": 16}}"#;
        let f = FunctionSpec::from_json(text).unwrap();
        let back = serde_json::to_string(&f).unwrap();
        assert_eq!(FunctionSpec::from_json(&back).unwrap(), f);

        assert!(matches!(
            FunctionSpec::from_json(r#"{"kind": "bessel", "params": {}}"#),
            Err(Error::UnknownKind(k)) if k == "bessel"
        ));
        assert!(matches!(
            FunctionSpec::from_json(r#"{"kind": "weierstrass_cos", "params": {"a": 0.5}}"#),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            FunctionSpec::from_json(
                r#"{"kind": "piecewise_linear", "params": {"nodes": [[2.0, 0.0], [1.0, 1.0]]}}"#
            ),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn epsilon_rules_validate() {
        assert!(EpsilonRule::inv_log(2.0).validate(1000).is_ok());
        assert!(EpsilonRule::InvLogLog { offset: 3.0 }
            .validate(1000)
            .is_ok());
        assert!(EpsilonRule::Constant { value: 0.0 }.validate(2).is_err());
        assert!(EpsilonRule::Table {
            values: vec![0.0, 0.0]
        }
        .validate(2)
        .is_err());
        assert!(EpsilonRule::Table {
            values: vec![1.0, 2.0]
        }
        .validate(2)
        .is_err());
        assert!(EpsilonRule::inv_log(0.0).validate(4).is_err());
    }

    #[test]
    fn polar_angle_inversion() {
        for &beta in &[-0.3, -0.1, 0.2, 0.3] {
            for i in 0..50 {
                let theta = -3.0 + 0.13 * i as f64;
                let s = invert_polar_angle(beta, theta);
                assert!((polar_angle(beta, s) - theta).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn log_radius_of_map_at_zero() {
        let f = FunctionSpec::LogRadiusOfMap { beta: 0.3 };
        let v = f.evaluate(&[0.0]).unwrap()[0];
        assert!((v - 1.3f64.ln()).abs() < 1e-15);
    }
}
