//! Conjugate functions, circle homeomorphisms and the boundary correspondence
//! of star-like domains.
//!
//! Given a continuous real f on the circle, [`solver::solve_boundary_correspondence`]
//! computes a homeomorphism h with h − id equal (up to a constant) to the
//! conjugate of f∘h. The [`analysis`] module measures what that buys: bounded
//! variation, a logarithmic modulus of continuity for h, O(1/|k|) coefficient
//! decay and the W^{1/2} pairing identity. [`pipeline`] runs whole experiments
//! from JSON configs.
//!
//! ```
//! use circlemap::{catalog::FunctionSpec, solver::{solve_boundary_correspondence, SolverParams}};
//!
//! let out = solve_boundary_correspondence(&FunctionSpec::cosine(), &SolverParams::with_grid(256)).unwrap();
//! assert!(out.converged);
//! ```

pub mod analysis;
pub mod catalog;
pub mod conjugation;
pub mod error;
mod fft;
pub mod grid;
pub mod ground_truth;
pub mod homeo;
pub mod pipeline;
pub mod series;
pub mod solver;

pub use catalog::{EpsilonRule, FunctionSpec};
pub use error::{Error, Result};
pub use grid::GridFunction;
pub use homeo::CircleHomeomorphism;
pub use series::{analyze, synthesize, FourierSeries};
pub use solver::{SolveOutcome, SolverParams};
