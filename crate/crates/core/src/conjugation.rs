//! The conjugation operator g ↦ g̃ in its two forms: the Fourier multiplier
//! −i·sgn(k) and the truncated principal-value integral with kernel
//! 1/(2 tan((t − θ)/2)). Also Fejér and partial summation.
//!
//! The conjugate is taken mean-zero: c̃_0 = 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::{check_grid_size, spacing, GridFunction};
use crate::series::FourierSeries;

/// −i·sgn(k)·c, done as a swap and a sign flip so no rounding occurs.
#[inline]
fn times_multiplier(k: i64, c: Complex64) -> Complex64 {
    match k.signum() {
        1 => Complex64::new(c.im, -c.re),
        -1 => Complex64::new(-c.im, c.re),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// c̃_k = −i·sgn(k)·c_k.
pub fn conjugate_spectral(s: &FourierSeries) -> FourierSeries {
    s.map_coeffs(s.is_real(), times_multiplier)
}

/// Mean-zero conjugate of real grid samples, computed through the multiplier
/// with the Nyquist bin dropped. Same result as
/// `synthesize(conjugate_spectral(analyze(g)), n)` in one transform pair.
pub fn conjugate_grid(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    check_grid_size(n)?;
    let mut buf: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft::forward(&mut buf);
    let half = (n / 2) as i64;
    for (i, c) in buf.iter_mut().enumerate() {
        let k = i as i64;
        let k = if k >= half { k - n as i64 } else { k };
        *c = if k == -half {
            Complex64::new(0.0, 0.0)
        } else {
            times_multiplier(k, *c)
        };
    }
    fft::inverse(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(buf.into_iter().map(|c| c.re * scale).collect())
}

/// Trapezoid-rule approximation of the truncated principal-value integral
///
/// g̃(t) ≈ (1/π) ∫_{eps ≤ |t−θ| ≤ π} g(θ) / (2 tan((t−θ)/2)) dθ
///
/// at every grid node. Nodes at offsets ±mΔ are paired, so the odd kernel is
/// only ever evaluated at positive offsets.
pub fn conjugate_quadrature(g: &GridFunction, eps: f64) -> Result<GridFunction> {
    let values = g.real_values()?;
    let n = values.len();
    let dt = spacing(n);
    if eps.is_nan() || eps < dt * (1.0 - 1e-12) {
        return Err(Error::BelowResolution {
            value: eps,
            spacing: dt,
        });
    }
    let first = ((eps / dt) - 1e-9).ceil().max(1.0) as usize;
    let half = n / 2;
    // weight for offset m: Δ/π · 1/(2 tan(mΔ/2))
    let weights: Vec<(usize, f64)> = (first..=half)
        .map(|m| {
            let s = 0.5 * m as f64 * dt;
            (m, dt / std::f64::consts::PI * 0.5 * s.cos() / s.sin())
        })
        .collect();
    let out = (0..n)
        .map(|j| {
            weights
                .iter()
                .map(|&(m, w)| {
                    let behind = values[(j + n - m) % n];
                    let ahead = values[(j + m) % n];
                    w * (behind - ahead)
                })
                .sum()
        })
        .collect();
    GridFunction::real(out)
}

/// σ_N: c_k (1 − |k|/N) for |k| ≤ min(N, M).
pub fn fejer_sum(s: &FourierSeries, order: usize) -> FourierSeries {
    assert!(order >= 1, "Fejér order must be at least 1");
    let m = s.max_freq().min(order);
    let n = order as f64;
    s.resized(m)
        .map_coeffs(s.is_real(), |k, c| c * (1.0 - k.unsigned_abs() as f64 / n))
}

/// S_N: truncation to |k| ≤ N.
pub fn partial_sum(s: &FourierSeries, order: usize) -> FourierSeries {
    s.resized(s.max_freq().min(order))
}
