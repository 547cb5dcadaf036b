//! Solves h − id = K[f∘h] for f = cos t and prints the solve summary.

use circlemap::grid::node;
use circlemap::solver::{build_curve, solve_boundary_correspondence, winding_number};
use circlemap::{FunctionSpec, SolverParams};

fn main() -> circlemap::Result<()> {
    let f = FunctionSpec::cosine();
    let n = 1024;
    println!(
        "winding of γ about 0: {:.12}",
        winding_number(&build_curve(&f, n)?)
    );

    let out = solve_boundary_correspondence(&f, &SolverParams::with_grid(n))?;
    println!(
        "converged = {}  residual = {:e}  iterations = {}  c = {:.12}",
        out.converged, out.residual, out.iterations, out.constant_c
    );
    for j in (0..n).step_by(n / 8) {
        println!("h({:.4}) = {:.12}", node(j, n), out.h.lift()[j]);
    }
    Ok(())
}
