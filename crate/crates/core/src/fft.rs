//! Thin wrapper around cached `rustfft` plans.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// Unnormalized forward DFT: X_k = Σ_j x_j e^{-2πi jk/n}.
pub(crate) fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Unnormalized inverse DFT: x_j = Σ_k X_k e^{+2πi jk/n}.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// Bin index of signed frequency `k` in an `n`-point transform.
#[inline]
pub(crate) fn bin(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}
