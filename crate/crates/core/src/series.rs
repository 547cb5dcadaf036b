//! Truncated Fourier series and the grid <-> coefficient transforms.
//!
//! `analyze` uses the 1/n-forward convention, so for a trigonometric polynomial
//! of degree below n/2 the coefficients are exactly the analytic ĝ(k).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::{check_grid_size, GridFunction, Samples};

/// Hermitian-symmetry tolerance enforced on construction of real series.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Coefficients c_k for |k| ≤ M.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    max_freq: usize,
    // index k + max_freq
    coeffs: Vec<Complex64>,
    real: bool,
}

impl FourierSeries {
    /// `coeffs[i]` is c_{i - M}; the length must be 2M + 1.
    pub fn new(max_freq: usize, coeffs: Vec<Complex64>, real: bool) -> Result<Self> {
        let expected = 2 * max_freq + 1;
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: coeffs.len(),
            });
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let s = Self {
            max_freq,
            coeffs,
            real,
        };
        if real {
            for k in 0..=max_freq as i64 {
                let deviation = (s.coeff(-k) - s.coeff(k).conj()).norm();
                if deviation > HERMITIAN_TOL {
                    return Err(Error::NotHermitian { k, deviation });
                }
            }
        }
        Ok(s)
    }

    pub fn zeros(max_freq: usize, real: bool) -> Self {
        Self {
            max_freq,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * max_freq + 1],
            real,
        }
    }

    /// Real series Σ a_k cos kt + b_k sin kt from `(k, a_k, b_k)` triples.
    /// Repeated k accumulate.
    pub fn from_real_terms(terms: &[(u32, f64, f64)]) -> Result<Self> {
        let max_freq = terms.iter().map(|t| t.0 as usize).max().unwrap_or(0);
        let mut s = Self::zeros(max_freq, true);
        for &(k, a, b) in terms {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidSpec(format!("non-finite term at k = {k}")));
            }
            let k = k as i64;
            if k == 0 {
                s.coeffs[max_freq].re += a;
            } else {
                *s.coeff_mut(k) += Complex64::new(a, -b) * 0.5;
                *s.coeff_mut(-k) += Complex64::new(a, b) * 0.5;
            }
        }
        Ok(s)
    }

    /// Builds a series from a coefficient function; `real` asserts Hermitian symmetry.
    pub fn from_fn(max_freq: usize, real: bool, c: impl Fn(i64) -> Complex64) -> Result<Self> {
        let m = max_freq as i64;
        Self::new(max_freq, (-m..=m).map(c).collect(), real)
    }

    pub fn max_freq(&self) -> usize {
        self.max_freq
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// c_k, zero outside |k| ≤ M.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.max_freq {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.max_freq as i64) as usize]
        }
    }

    fn coeff_mut(&mut self, k: i64) -> &mut Complex64 {
        let m = self.max_freq as i64;
        &mut self.coeffs[(k + m) as usize]
    }

    /// `(k, c_k)` for k = -M..=M.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.max_freq as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - m, c))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Applies `w(k) * c_k` keeping max_freq; the realness flag is kept as given.
    pub fn map_coeffs(&self, real: bool, w: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let coeffs = self.iter().map(|(k, c)| w(k, c)).collect();
        Self {
            max_freq: self.max_freq,
            coeffs,
            real,
        }
    }

    /// Restriction to |k| ≤ `max_freq` (padding with zeros if larger).
    pub fn resized(&self, max_freq: usize) -> Self {
        let m = max_freq as i64;
        Self {
            max_freq,
            coeffs: (-m..=m).map(|k| self.coeff(k)).collect(),
            real: self.real,
        }
    }

    /// The translate t ↦ g(t + a): c_k e^{ika}.
    pub fn rotate(&self, a: f64) -> Self {
        self.map_coeffs(self.real, |k, c| {
            c * Complex64::from_polar(1.0, k as f64 * a)
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map_coeffs(self.real, |_, c| c * factor)
    }

    /// Largest coefficient gap over the union of both frequency ranges.
    pub fn max_coeff_diff(&self, other: &FourierSeries) -> f64 {
        let m = self.max_freq.max(other.max_freq) as i64;
        (-m..=m)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Σ c_k e^{ikt} at an arbitrary point.
    pub fn evaluate_complex(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t);
        let zinv = z.conj();
        let mut acc = self.coeff(0);
        let (mut zp, mut zn) = (z, zinv);
        for k in 1..=self.max_freq as i64 {
            acc += self.coeff(k) * zp + self.coeff(-k) * zn;
            zp *= z;
            zn *= zinv;
        }
        acc
    }

    /// Real part of the synthesized value; for real series this is the value itself.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.evaluate_complex(t).re
    }

    /// Real trigonometric form `(k, a_k, b_k)` for k = 0..=M, dropping terms with
    /// |a_k|, |b_k| ≤ `threshold`.
    pub fn to_real_terms(&self, threshold: f64) -> Vec<(u32, f64, f64)> {
        let mut out = Vec::new();
        let c0 = self.coeff(0).re;
        if c0.abs() > threshold {
            out.push((0, c0, 0.0));
        }
        for k in 1..=self.max_freq as i64 {
            let c = self.coeff(k);
            let (a, b) = (2.0 * c.re, -2.0 * c.im);
            if a.abs() > threshold || b.abs() > threshold {
                out.push((k as u32, a, b));
            }
        }
        out
    }
}

/// c_k = (1/n) Σ_j g(t_j) e^{-ik t_j} for |k| ≤ n/2 − 1.
pub fn analyze(g: &GridFunction) -> FourierSeries {
    let n = g.n();
    let mut buf = g.to_complex();
    fft::forward(&mut buf);
    let scale = 1.0 / n as f64;
    let max_freq = n / 2 - 1;
    let m = max_freq as i64;
    let real = g.is_real();
    let coeffs = (-m..=m)
        .map(|k| {
            if real {
                // exact Hermitian symmetry: c_{-k} = conj(c_k)
                let a = buf[fft::bin(k, n)];
                let b = buf[fft::bin(-k, n)].conj();
                (a + b) * (0.5 * scale)
            } else {
                buf[fft::bin(k, n)] * scale
            }
        })
        .collect();
    FourierSeries {
        max_freq,
        coeffs,
        real,
    }
}

/// Samples of Σ_{|k|≤M} c_k e^{ikt} on the n-grid. Real series yield real samples.
pub fn synthesize(s: &FourierSeries, n: usize) -> Result<GridFunction> {
    check_grid_size(n)?;
    if n < 2 * (s.max_freq + 1) {
        return Err(Error::GridTooSmall {
            n,
            max_freq: s.max_freq,
        });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in s.iter() {
        buf[fft::bin(k, n)] += c;
    }
    fft::inverse(&mut buf);
    if s.real {
        GridFunction::real(buf.into_iter().map(|c| c.re).collect())
    } else {
        GridFunction::complex(buf)
    }
}

/// Synthesizes a real series on the grid, returning the raw samples.
pub(crate) fn synthesize_real(s: &FourierSeries, n: usize) -> Result<Vec<f64>> {
    match synthesize(s, n)?.samples() {
        Samples::Real(v) => Ok(v.clone()),
        Samples::Complex(v) => Ok(v.iter().map(|c| c.re).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cosine_has_two_half_coefficients() {
        let g = GridFunction::from_fn(8, f64::cos).unwrap();
        let s = analyze(&g);
        assert_eq!(s.max_freq(), 3);
        assert!(s.is_real());
        for (k, ck) in s.iter() {
            let expected = if k.abs() == 1 { 0.5 } else { 0.0 };
            assert!((ck - c(expected, 0.0)).norm() < 1e-15, "k = {k}: {ck}");
        }
    }

    #[test]
    fn constant_is_dc_only() {
        let s = analyze(&GridFunction::constant(16, 1.0).unwrap());
        assert!((s.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        for k in 1..=7 {
            assert!(s.coeff(k).norm() < 1e-15);
            assert!(s.coeff(-k).norm() < 1e-15);
        }
    }

    #[test]
    fn sine_two() {
        let s = analyze(&GridFunction::from_fn(16, |t| (2.0 * t).sin()).unwrap());
        assert!((s.coeff(2) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((s.coeff(-2) - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn synthesize_cosine_and_empty() {
        let s = FourierSeries::from_real_terms(&[(1, 1.0, 0.0)]).unwrap();
        let g = synthesize(&s, 8).unwrap();
        let v = g.as_real().unwrap();
        for (j, x) in v.iter().enumerate() {
            assert!((x - (TAU * j as f64 / 8.0).cos()).abs() < 1e-15);
        }
        let z = synthesize(&FourierSeries::zeros(0, true), 8).unwrap();
        assert!(z.as_real().unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn synthesize_needs_room() {
        let s = FourierSeries::zeros(4, true);
        assert!(matches!(
            synthesize(&s, 8),
            Err(Error::GridTooSmall { n: 8, max_freq: 4 })
        ));
        assert!(synthesize(&s, 16).is_ok());
    }

    #[test]
    fn hermitian_violation_rejected() {
        let coeffs = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(
            FourierSeries::new(1, coeffs, true),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn pointwise_evaluation_matches_terms() {
        let s = FourierSeries::from_real_terms(&[(0, 0.25, 0.0), (3, 1.0, -2.0)]).unwrap();
        for &t in &[0.0f64, 0.3, 2.0, -5.0] {
            let expected = 0.25 + (3.0 * t).cos() - 2.0 * (3.0 * t).sin();
            assert!((s.evaluate(t) - expected).abs() < 1e-14);
        }
        let back = s.to_real_terms(0.0);
        assert_eq!(back.len(), 2);
        assert!((back[1].1 - 1.0).abs() < 1e-15 && (back[1].2 + 2.0).abs() < 1e-15);
    }
}
