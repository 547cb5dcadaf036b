//! Diagnostics on sampled functions and series: variation, modulus of
//! continuity, coefficient decay, the W^{1/2} seminorm, Stieltjes sums and
//! the Fejér-mean lower bound for the lacunary sine series.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::catalog::EpsilonRule;
use crate::conjugation::{conjugate_spectral, fejer_sum, partial_sum};
use crate::error::{Error, Result};
use crate::grid::{spacing, GridFunction};
use crate::homeo::CircleHomeomorphism;
use crate::series::{analyze, synthesize_real, FourierSeries};

/// Smallest dyadic exponent j of δ_j = 2π·2^{−j} used by the log-modulus
/// statistic; 2π/32 is the largest such δ below 1/4.
pub const LOG_MODULUS_MIN_EXP: u32 = 5;

/// Σ_j |g(t_{j+1}) − g(t_j)| with cyclic wraparound.
pub fn total_variation(g: &GridFunction) -> Result<f64> {
    let v = g.real_values()?;
    let n = v.len();
    Ok((0..n).map(|j| (v[(j + 1) % n] - v[j]).abs()).sum())
}

fn offsets_within(delta: f64, n: usize) -> Result<usize> {
    let dt = spacing(n);
    if delta.is_nan() || delta < dt * (1.0 - 1e-12) {
        return Err(Error::BelowResolution {
            value: delta,
            spacing: dt,
        });
    }
    Ok(((delta / dt + 1e-9).floor() as usize).min(n / 2))
}

/// max − min over every cyclic window of `w` consecutive samples.
fn max_window_range(v: &[f64], w: usize) -> f64 {
    let n = v.len();
    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for i in 0..n + w - 1 {
        let x = v[i % n];
        while hi.back().is_some_and(|&b| v[b % n] <= x) {
            hi.pop_back();
        }
        while lo.back().is_some_and(|&b| v[b % n] >= x) {
            lo.pop_back();
        }
        hi.push_back(i);
        lo.push_back(i);
        if i + 1 >= w {
            let start = i + 1 - w;
            while hi.front().is_some_and(|&f| f < start) {
                hi.pop_front();
            }
            while lo.front().is_some_and(|&f| f < start) {
                lo.pop_front();
            }
            best = best.max(v[hi[0] % n] - v[lo[0] % n]);
        }
    }
    best
}

/// ω(δ) = max |g(t_i) − g(t_j)| over node pairs at cyclic distance ≤ δ.
pub fn modulus_of_continuity(g: &GridFunction, deltas: &[f64]) -> Result<Vec<f64>> {
    let v = g.real_values()?;
    let n = v.len();
    deltas
        .iter()
        .map(|&d| Ok(max_window_range(v, offsets_within(d, n)? + 1)))
        .collect()
}

/// ω_h(δ) = max_j h(t_j + mΔ) − h(t_j) for the largest mΔ ≤ δ, on the lift.
pub fn homeomorphism_modulus(h: &CircleHomeomorphism, deltas: &[f64]) -> Result<Vec<f64>> {
    let n = h.n();
    deltas
        .iter()
        .map(|&d| {
            let m = offsets_within(d, n)? as i64;
            Ok((0..n as i64)
                .map(|j| h.lift_at(j + m) - h.lift_at(j))
                .fold(0.0, f64::max))
        })
        .collect()
}

/// δ_j = 2π·2^{−j} for j = 5..=log2 n, i.e. the dyadic scales in [2π/n, 1/4].
pub fn dyadic_deltas(n: usize) -> Vec<f64> {
    let top = n.trailing_zeros();
    (LOG_MODULUS_MIN_EXP..=top)
        .map(|j| TAU / (1u64 << j) as f64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogModulus {
    /// sup over the scales of ω_h(δ)·log(1/δ).
    pub value: f64,
    pub deltas: Vec<f64>,
    pub omegas: Vec<f64>,
}

/// sup_δ ω_h(δ)·log(1/δ) over [`dyadic_deltas`].
pub fn log_modulus_statistic(h: &CircleHomeomorphism) -> Result<LogModulus> {
    let deltas = dyadic_deltas(h.n());
    let omegas = homeomorphism_modulus(h, &deltas)?;
    let value = deltas
        .iter()
        .zip(&omegas)
        .map(|(d, w)| w * (1.0 / d).ln())
        .fold(0.0, f64::max);
    Ok(LogModulus {
        value,
        deltas,
        omegas,
    })
}

/// Σ_{|k|≤M} |c_k|²·|k|.
pub fn sobolev_half(s: &FourierSeries) -> f64 {
    s.iter()
        .map(|(k, c)| c.norm_sqr() * k.unsigned_abs() as f64)
        .sum()
}

/// Cumulative sums of |c_k|²·|k| through the bands 2^m ≤ |k| < 2^{m+1}.
pub fn sobolev_band_sums(s: &FourierSeries) -> Vec<f64> {
    let mut acc = 0.0;
    band_fold(s, |k, c| c.norm_sqr() * k as f64, |band| band.iter().sum())
        .into_iter()
        .map(|b| {
            acc += b;
            acc
        })
        .collect()
}

fn band_fold(
    s: &FourierSeries,
    term: impl Fn(u64, num_complex::Complex64) -> f64,
    reduce: impl Fn(&[f64]) -> f64,
) -> Vec<f64> {
    let m = s.max_freq() as u64;
    if m == 0 {
        return Vec::new();
    }
    let bands = 64 - m.leading_zeros() as usize;
    (0..bands)
        .map(|b| {
            let lo = 1u64 << b;
            let hi = (lo << 1).min(m + 1);
            let vals: Vec<f64> = (lo..hi)
                .flat_map(|k| {
                    let k_i = k as i64;
                    [term(k, s.coeff(k_i)), term(k, s.coeff(-k_i))]
                })
                .collect();
            reduce(&vals)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    /// max |k|·|c_k| over 2^m ≤ |k| < 2^{m+1}, for m = 0, 1, …
    pub bands: Vec<f64>,
    /// max |k|·|c_k| over 1 ≤ |k| ≤ M.
    pub sup: f64,
}

pub fn decay_profile(s: &FourierSeries) -> DecayProfile {
    let bands = band_fold(
        s,
        |k, c| k as f64 * c.norm(),
        |band| band.iter().copied().fold(0.0, f64::max),
    );
    let sup = bands.iter().copied().fold(0.0, f64::max);
    DecayProfile { bands, sup }
}

/// Left-node Riemann–Stieltjes sum (1/2π) Σ_j g(t_j)·(gt(t_{j+1}) − gt(t_j)).
pub fn stieltjes_pairing(g: &GridFunction, gt: &GridFunction) -> Result<f64> {
    if g.n() != gt.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: gt.n(),
        });
    }
    Ok(strided_pairing(g.real_values()?, gt.real_values()?, 1))
}

fn strided_pairing(g: &[f64], gt: &[f64], stride: usize) -> f64 {
    let n = g.len();
    (0..n)
        .step_by(stride)
        .map(|j| g[j] * (gt[(j + stride) % n] - gt[j]))
        .sum::<f64>()
        / TAU
}

/// Romberg extrapolation of left-node sums on the grid and its 2× and 4×
/// subsamplings. For a trigonometric polynomial the left sum is
/// Σ|c_k|²·sin(|k|Δ)/Δ, an even series in Δ, so two elimination steps leave an
/// O(Δ⁶) error. Needs n ≥ 32.
pub fn stieltjes_pairing_extrapolated(g: &GridFunction, gt: &GridFunction) -> Result<f64> {
    if g.n() != gt.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: gt.n(),
        });
    }
    if g.n() < 32 {
        return Err(Error::InvalidGridSize(g.n()));
    }
    let (a, b) = (g.real_values()?, gt.real_values()?);
    let s1 = strided_pairing(a, b, 1);
    let s2 = strided_pairing(a, b, 2);
    let s4 = strided_pairing(a, b, 4);
    let r1 = (4.0 * s1 - s2) / 3.0;
    let r2 = (4.0 * s2 - s4) / 3.0;
    Ok((16.0 * r1 - r2) / 15.0)
}

/// The conjugate of g on the grid, via the spectral multiplier.
pub fn spectral_conjugate(g: &GridFunction) -> Result<GridFunction> {
    GridFunction::real(synthesize_real(&conjugate_spectral(&analyze(g)), g.n())?)
}

/// (computed_sup, closed_form) for g = Σ_{m≤N} ε(m)/m·sin mt:
/// the grid sup of σ_N(g̃) and Σ_{m=1}^{N} ε(m)/m·(1 − m/N).
pub fn fejer_conjugate_sup(rule: &EpsilonRule, order: usize, n: usize) -> Result<(f64, f64)> {
    if order < 2 {
        return Err(Error::InvalidParams(format!(
            "Fejér order must be ≥ 2, got {order}"
        )));
    }
    rule.validate(order)?;
    let coeff = |m: usize| rule.eval(m) / m as f64;
    let terms: Vec<(u32, f64, f64)> = (1..=order).map(|m| (m as u32, 0.0, coeff(m))).collect();
    let g = FourierSeries::from_real_terms(&terms)?;
    let sigma = fejer_sum(&conjugate_spectral(&g), order);
    let values = synthesize_real(&sigma, n)?;
    let computed = values.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    let closed = (1..=order)
        .map(|m| coeff(m) * (1.0 - m as f64 / order as f64))
        .sum();
    Ok((computed, closed))
}

/// ‖S_N g − g‖∞ on the grid for each requested order N.
pub fn partial_sum_errors(g: &GridFunction, orders: &[usize]) -> Result<Vec<f64>> {
    let s = analyze(g);
    let v = g.real_values()?;
    orders
        .iter()
        .map(|&order| {
            let p = synthesize_real(&partial_sum(&s, order), g.n())?;
            Ok(p.iter()
                .zip(v)
                .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction::from_fn(n, f).unwrap()
    }

    #[test]
    fn variation_of_constant_and_sine() {
        assert_eq!(
            total_variation(&GridFunction::constant(64, 3.0).unwrap()).unwrap(),
            0.0
        );
        let tv = total_variation(&grid(4096, f64::sin)).unwrap();
        assert!((tv - 4.0).abs() < 1e-5, "{tv}");
    }

    #[test]
    fn variation_rejects_complex() {
        let g = GridFunction::complex(vec![num_complex::Complex64::new(0.0, 1.0); 8]).unwrap();
        assert!(matches!(total_variation(&g), Err(Error::ComplexInput)));
    }

    #[test]
    fn modulus_examples() {
        let c = GridFunction::constant(64, 1.0).unwrap();
        assert_eq!(
            modulus_of_continuity(&c, &[0.1, 1.0, PI]).unwrap(),
            vec![0.0; 3]
        );
        let w = modulus_of_continuity(&grid(256, f64::cos), &[PI]).unwrap();
        assert!((w[0] - 2.0).abs() < 1e-15);
        assert!(matches!(
            modulus_of_continuity(&c, &[0.01]),
            Err(Error::BelowResolution { .. })
        ));
    }

    #[test]
    fn modulus_matches_brute_force() {
        let g = grid(128, |t| {
            (3.0 * t).sin() + 0.3 * (7.0 * t).cos() + 0.1 * t.cos().powi(5)
        });
        let v = g.as_real().unwrap();
        let n = v.len();
        for m in [1usize, 3, 10, 64] {
            let delta = m as f64 * spacing(n);
            let fast = modulus_of_continuity(&g, &[delta]).unwrap()[0];
            let mut slow = 0.0f64;
            for i in 0..n {
                for d in 0..=m {
                    slow = slow.max((v[(i + d) % n] - v[i]).abs());
                }
            }
            assert_eq!(fast, slow, "m = {m}");
        }
    }

    #[test]
    fn identity_log_modulus() {
        let h = CircleHomeomorphism::identity(1024).unwrap();
        let lm = log_modulus_statistic(&h).unwrap();
        assert_eq!(lm.deltas.len(), 6);
        assert!(*lm.deltas.first().unwrap() < 0.25);
        // ω(δ) = δ for the identity, largest product at the largest δ
        let d = TAU / 32.0;
        assert!((lm.value - d * (1.0 / d).ln()).abs() < 1e-12);
    }

    #[test]
    fn sobolev_examples() {
        let cos = FourierSeries::from_real_terms(&[(1, 1.0, 0.0)]).unwrap();
        assert!((sobolev_half(&cos) - 0.5).abs() < 1e-16);
        let s2 = FourierSeries::from_real_terms(&[(2, 0.0, 1.0)]).unwrap();
        assert!((sobolev_half(&s2) - 1.0).abs() < 1e-16);
        let c = FourierSeries::from_real_terms(&[(0, 5.0, 0.0)]).unwrap();
        assert_eq!(sobolev_half(&c), 0.0);
        let bands = sobolev_band_sums(&s2.resized(9));
        assert_eq!(bands.len(), 4);
        assert_eq!(bands[0], 0.0);
        assert!((bands[3] - 1.0).abs() < 1e-16);
    }

    #[test]
    fn decay_examples() {
        let cos = FourierSeries::from_real_terms(&[(1, 1.0, 0.0)])
            .unwrap()
            .resized(20);
        let p = decay_profile(&cos);
        assert_eq!(p.bands.len(), 5);
        assert!((p.bands[0] - 0.5).abs() < 1e-16);
        assert!(p.bands[1..].iter().all(|&b| b == 0.0));
        assert!((p.sup - 0.5).abs() < 1e-16);
        let z = decay_profile(&FourierSeries::zeros(7, true));
        assert!(z.bands.iter().all(|&b| b == 0.0) && z.sup == 0.0);
    }

    #[test]
    fn stieltjes_examples() {
        let n = 4096;
        let (g, gt) = (grid(n, f64::cos), grid(n, f64::sin));
        let left = stieltjes_pairing(&g, &gt).unwrap();
        // left sum of cos against d(sin) is sin(Δ)/(2Δ)
        let dt = spacing(n);
        assert!((left - dt.sin() / (2.0 * dt)).abs() < 1e-14);
        let ex = stieltjes_pairing_extrapolated(&g, &gt).unwrap();
        assert!((ex - 0.5).abs() < 1e-12);

        let (g, gt) = (grid(n, |t| (2.0 * t).sin()), grid(n, |t| -(2.0 * t).cos()));
        assert!((stieltjes_pairing_extrapolated(&g, &gt).unwrap() - 1.0).abs() < 1e-12);

        assert!(matches!(
            stieltjes_pairing(&grid(8, f64::cos), &grid(16, f64::sin)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fejer_sup_small_order() {
        let rule = EpsilonRule::inv_log(2.0);
        let (computed, closed) = fejer_conjugate_sup(&rule, 2, 64).unwrap();
        let expected = 0.5 / 3f64.ln();
        assert!((closed - expected).abs() < 1e-15);
        assert!((computed - closed).abs() < 1e-14);
        assert!(fejer_conjugate_sup(&rule, 1, 64).is_err());
        assert!(fejer_conjugate_sup(&EpsilonRule::Constant { value: 0.0 }, 2, 64).is_err());
    }

    #[test]
    fn partial_sum_errors_shrink() {
        let g = grid(256, |t| 1.0 / (1.2 - t.cos()));
        let e = partial_sum_errors(&g, &[2, 4, 8, 16, 32]).unwrap();
        assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
    }
}
