#![allow(dead_code)]

use std::f64::consts::TAU;

use circlemap::FourierSeries;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random real trig polynomial of the given degree as `(k, a_k, b_k)` terms,
/// coefficients uniform in [−1, 1].
pub fn random_terms(rng: &mut impl Rng, degree: u32) -> Vec<(u32, f64, f64)> {
    (0..=degree)
        .map(|k| (k, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Rescales terms so that Σ k·sqrt(a_k² + b_k²) equals `bound` (a bound on sup|g′|).
pub fn normalize_slope(terms: &[(u32, f64, f64)], bound: f64) -> Vec<(u32, f64, f64)> {
    let s: f64 = terms.iter().map(|&(k, a, b)| k as f64 * a.hypot(b)).sum();
    terms
        .iter()
        .map(|&(k, a, b)| (k, a * bound / s, b * bound / s))
        .collect()
}

pub fn random_hermitian(rng: &mut impl Rng, max_freq: usize) -> FourierSeries {
    let m = max_freq as i64;
    let pos: Vec<Complex64> = (0..=m)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    FourierSeries::from_fn(max_freq, true, |k| {
        let c = pos[k.unsigned_abs() as usize];
        if k == 0 {
            Complex64::new(c.re, 0.0)
        } else if k > 0 {
            c
        } else {
            c.conj()
        }
    })
    .unwrap()
}

/// Direct evaluation of Σ a_k cos kt + b_k sin kt.
pub fn eval_terms(terms: &[(u32, f64, f64)], t: f64) -> f64 {
    terms
        .iter()
        .map(|&(k, a, b)| a * (k as f64 * t).cos() + b * (k as f64 * t).sin())
        .sum()
}

/// Conjugate of a trig polynomial by the textbook rule cos ↦ sin, sin ↦ −cos.
pub fn conjugate_terms(terms: &[(u32, f64, f64)]) -> Vec<(u32, f64, f64)> {
    terms
        .iter()
        .filter(|t| t.0 > 0)
        .map(|&(k, a, b)| (k, -b, a))
        .collect()
}

/// O(n²) DFT: c_k = (1/n) Σ_j g_j e^{−ik t_j}.
pub fn naive_coefficient(values: &[f64], k: i64) -> Complex64 {
    let n = values.len();
    values
        .iter()
        .enumerate()
        .map(|(j, &v)| Complex64::from_polar(v, -(k as f64) * TAU * j as f64 / n as f64))
        .sum::<Complex64>()
        / n as f64
}

pub fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Ratio check for "no growth" across grid sizes.
pub fn ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] / w[0]).collect()
}
