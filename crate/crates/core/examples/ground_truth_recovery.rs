//! Recovers the known boundary correspondence of G(z) = z + βz².

use circlemap::ground_truth::synthesize_ground_truth;
use circlemap::solver::solve_boundary_correspondence;
use circlemap::SolverParams;

fn main() -> circlemap::Result<()> {
    for beta in [0.1, -0.2, 0.3] {
        let gt = synthesize_ground_truth(beta)?;
        let out = solve_boundary_correspondence(&gt.f, &SolverParams::with_grid(2048))?;
        let exact = gt.h_exact(2048)?;
        let err = out
            .h
            .lift()
            .iter()
            .zip(exact.lift())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        println!(
            "beta = {beta:5}  fit error {:.1e}  converged = {}  sup|h − h_exact| = {err:.3e}",
            gt.fit_error, out.converged
        );
    }
    Ok(())
}
