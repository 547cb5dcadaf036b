//! Total variation of h − id and the log-modulus statistic under refinement.

use circlemap::analysis::{log_modulus_statistic, total_variation};
use circlemap::solver::solve_boundary_correspondence;
use circlemap::{FunctionSpec, SolverParams};

fn main() -> circlemap::Result<()> {
    let f = FunctionSpec::from_json(
        r#"{"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0], [3, 0.0, 0.5]]}}"#,
    )?;
    println!(
        "{:>6}  {:>9}  {:>14}  {:>10}",
        "n", "converged", "TV(h − id)", "ω·log(1/δ)"
    );
    for n in [2048, 4096, 8192] {
        let out = solve_boundary_correspondence(&f, &SolverParams::with_grid(n))?;
        let tv = total_variation(&out.h.displacement())?;
        let lm = log_modulus_statistic(&out.h)?;
        println!(
            "{n:>6}  {:>9}  {tv:>14.10}  {:>10.6}",
            out.converged, lm.value
        );
    }
    Ok(())
}
