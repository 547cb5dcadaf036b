//! Orientation-preserving circle homeomorphisms, stored as lifts.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{check_grid_size, node, spacing, GridFunction};

/// Minimal per-node increase enforced by monotone repair inside pooled blocks.
pub const REPAIR_SLOPE: f64 = 1e-12;

/// Lift of a degree-one circle homeomorphism on the n-grid.
///
/// `lift[j] ≈ h(t_j)` for j = 0..=n, strictly increasing, and
/// `lift[n] == lift[0] + 2π` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleHomeomorphism {
    lift: Vec<f64>,
}

impl CircleHomeomorphism {
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_values((0..n).map(|j| node(j, n)).collect())
    }

    /// From n values h(t_j); the closing entry is set to `values[0] + 2π`.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        check_grid_size(values.len())?;
        let first = values[0];
        values.push(first + TAU);
        Self::validate(&values)?;
        Ok(Self { lift: values })
    }

    /// From a full lift of n + 1 entries; the closing entry must equal
    /// `lift[0] + 2π` to within 1e-12 and is then snapped to it.
    pub fn from_lift(mut lift: Vec<f64>) -> Result<Self> {
        if lift.len() < 2 {
            return Err(Error::InvalidGridSize(lift.len().saturating_sub(1)));
        }
        let n = lift.len() - 1;
        check_grid_size(n)?;
        let rise = lift[n] - lift[0];
        if (rise - TAU).abs() > 1e-12 {
            return Err(Error::NotPeriodic { rise });
        }
        lift[n] = lift[0] + TAU;
        Self::validate(&lift)?;
        Ok(Self { lift })
    }

    /// h = id + u for a periodic displacement u given on the grid.
    pub fn from_displacement(u: &[f64]) -> Result<Self> {
        let n = u.len();
        Self::from_values(u.iter().enumerate().map(|(j, x)| node(j, n) + x).collect())
    }

    /// Samples an explicit lift `h` (which must satisfy h(t + 2π) = h(t) + 2π).
    pub fn from_fn(n: usize, h: impl Fn(f64) -> f64) -> Result<Self> {
        check_grid_size(n)?;
        Self::from_values((0..n).map(|j| h(node(j, n))).collect())
    }

    fn validate(lift: &[f64]) -> Result<()> {
        if let Some(index) = lift.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        match lift.windows(2).position(|w| w[1] <= w[0]) {
            Some(index) => Err(Error::NotIncreasing { index }),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.lift.len() - 1
    }

    pub fn lift(&self) -> &[f64] {
        &self.lift
    }

    /// h(t_j) for j < n.
    pub fn values(&self) -> &[f64] {
        &self.lift[..self.n()]
    }

    /// u_j = h(t_j) − t_j.
    pub fn displacement_values(&self) -> Vec<f64> {
        let n = self.n();
        self.values()
            .iter()
            .enumerate()
            .map(|(j, h)| h - node(j, n))
            .collect()
    }

    /// h − id as a periodic grid function.
    pub fn displacement(&self) -> GridFunction {
        GridFunction::real(self.displacement_values())
            .expect("valid lift yields a valid displacement")
    }

    /// mean(h − id).
    pub fn mean_displacement(&self) -> f64 {
        let u = self.displacement_values();
        u.iter().sum::<f64>() / u.len() as f64
    }

    /// Lift value at grid index `j` extended to all integers by periodicity.
    pub fn lift_at(&self, j: i64) -> f64 {
        let n = self.n() as i64;
        let turns = j.div_euclid(n);
        self.lift[j.rem_euclid(n) as usize] + TAU * turns as f64
    }

    /// Piecewise-linear interpolation of the lift; equivariant under t ↦ t + 2π.
    pub fn interpolate(&self, t: f64) -> f64 {
        let n = self.n();
        let turns = (t / TAU).floor();
        let r = t - TAU * turns;
        let x = r / spacing(n);
        let j = (x.floor() as usize).min(n - 1);
        let w = x - j as f64;
        let (a, b) = (self.lift[j], self.lift[j + 1]);
        a + w * (b - a) + TAU * turns
    }

    /// Smallest increment lift[j+1] − lift[j].
    pub fn min_step(&self) -> f64 {
        self.lift
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Makes `t_j + u_j` strictly increasing (cyclically, with period 2π) by an L2
/// isotonic projection that leaves pooled runs rising with slope [`REPAIR_SLOPE`].
///
/// Returns `Ok(false)` when `u` was already admissible. The mean of `u` is kept.
pub fn repair_monotone(u: &mut [f64]) -> Result<bool> {
    let n = u.len();
    check_grid_size(n)?;
    let h = |j: usize, u: &[f64]| node(j, n) + u[j];
    let step = |j: usize, u: &[f64]| {
        if j + 1 < n {
            h(j + 1, u) - h(j, u)
        } else {
            h(0, u) + TAU - h(n - 1, u)
        }
    };
    if (0..n).all(|j| step(j, u) > 0.0) {
        return Ok(false);
    }

    // Start in the middle of the longest run of increasing steps.
    let bad: Vec<usize> = (0..n).filter(|&j| step(j, u) <= 0.0).collect();
    let (gap, after) = bad
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let next = bad[(i + 1) % bad.len()];
            ((next + n - b - 1) % n, b)
        })
        .max_by_key(|&(gap, _)| gap)
        .unwrap_or((0, 0));
    let start = (after + 2 + gap / 2) % n;

    // Three unrolled periods; the middle one is kept, away from the ends
    // where the truncated fit differs from the periodic one.
    let periods = 3;
    let lifted = |i: usize| {
        let j = (start + i) % n;
        let turns = ((start + i) / n) as f64;
        h(j, u) + turns * TAU
    };

    // Isotonic fit of v_i − i·s, then add i·s back: pooled runs become ramps
    // of slope s and every step is at least s. Pooled blocks are (sum, count).
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(periods * n);
    for i in 0..periods * n {
        blocks.push((lifted(i) - i as f64 * REPAIR_SLOPE, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s0 / c0 as f64 >= s1 / c1 as f64 {
                blocks.pop();
                let last = blocks.last_mut().unwrap();
                *last = (s0 + s1, c0 + c1);
            } else {
                break;
            }
        }
    }
    let mut fitted = Vec::with_capacity(periods * n);
    for &(s, c) in &blocks {
        fitted.extend(std::iter::repeat_n(s / c as f64, c));
    }
    let mut fitted: Vec<f64> = fitted[n..2 * n]
        .iter()
        .enumerate()
        .map(|(i, v)| v + (n + i) as f64 * REPAIR_SLOPE)
        .collect();

    let target: f64 = (0..n).map(|i| lifted(n + i)).sum::<f64>() / n as f64;
    let shift = target - fitted.iter().sum::<f64>() / n as f64;
    for v in fitted.iter_mut() {
        *v += shift;
    }

    let strictly = fitted.windows(2).all(|w| w[1] > w[0]);
    let closes = fitted[n - 1] < fitted[0] + TAU;
    if !strictly || !closes {
        return Err(Error::RepairFailed(format!(
            "periodic projection is not strictly increasing (closes: {closes})"
        )));
    }

    for (i, v) in fitted.into_iter().enumerate() {
        let j = (start + n + i) % n;
        let turns = ((start + n + i) / n) as f64;
        u[j] = v - turns * TAU - node(j, n);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_interpolates_exactly() {
        let h = CircleHomeomorphism::identity(64).unwrap();
        assert!((h.interpolate(1.2345) - 1.2345).abs() < 1e-14);
        assert_eq!(h.lift()[64], h.lift()[0] + TAU);
    }

    #[test]
    fn node_reproduction() {
        let h = CircleHomeomorphism::from_fn(32, |t| t + 0.3 * t.sin()).unwrap();
        for j in 0..32 {
            assert!((h.interpolate(node(j, 32)) - h.lift()[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolation_is_equivariant_and_increasing() {
        let h = CircleHomeomorphism::from_fn(64, |t| t + 0.2 * (2.0 * t).sin()).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..500 {
            let t = -7.0 + 0.03 * i as f64;
            let v = h.interpolate(t);
            assert!(v > prev);
            prev = v;
            assert!((h.interpolate(t + TAU) - v - TAU).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_decreasing_lift() {
        let mut v: Vec<f64> = (0..8).map(|j| node(j, 8)).collect();
        v.swap(2, 3);
        assert!(matches!(
            CircleHomeomorphism::from_values(v),
            Err(Error::NotIncreasing { index: 2 })
        ));
    }

    #[test]
    fn rejects_wrong_degree() {
        let mut lift: Vec<f64> = (0..=8).map(|j| node(j, 8)).collect();
        lift[8] += 0.1;
        assert!(matches!(
            CircleHomeomorphism::from_lift(lift),
            Err(Error::NotPeriodic { .. })
        ));
    }

    #[test]
    fn repair_fixes_local_fold_and_keeps_mean() {
        let n = 64;
        let mut u: Vec<f64> = (0..n).map(|j| 0.1 * (node(j, n)).sin()).collect();
        // fold: push node 10 past node 11
        u[10] += 0.3;
        let mean_before: f64 = u.iter().sum::<f64>() / n as f64;
        assert!(repair_monotone(&mut u).unwrap());
        let mean_after: f64 = u.iter().sum::<f64>() / n as f64;
        assert!((mean_before - mean_after).abs() < 1e-14);
        assert!(CircleHomeomorphism::from_displacement(&u).is_ok());
        assert!(!repair_monotone(&mut u).unwrap());
    }

    #[test]
    fn repair_handles_fold_across_the_seam() {
        let n = 32;
        let mut u = vec![0.0; n];
        u[n - 1] = 0.5;
        u[0] = -0.4;
        assert!(repair_monotone(&mut u).unwrap());
        let h = CircleHomeomorphism::from_displacement(&u).unwrap();
        assert!(h.min_step() > 0.0);
    }
}
