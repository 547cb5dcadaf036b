//! Compares the Stieltjes integral of f∘h against its conjugate with Σ|c_k|²|k|.

use circlemap::analysis::{
    sobolev_band_sums, sobolev_half, spectral_conjugate, stieltjes_pairing,
    stieltjes_pairing_extrapolated,
};
use circlemap::solver::{compose, solve_boundary_correspondence};
use circlemap::{analyze, FunctionSpec, SolverParams};

fn main() -> circlemap::Result<()> {
    let f = FunctionSpec::from_json(
        r#"{"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0], [3, 0.0, 0.5]]}}"#,
    )?;
    let out = solve_boundary_correspondence(&f, &SolverParams::with_grid(4096))?;
    let g = compose(&f, &out.h)?;
    let gt = spectral_conjugate(&g)?;
    let s = analyze(&g);

    println!("Σ|c_k|²|k|            = {:.12}", sobolev_half(&s));
    println!(
        "left Stieltjes sum     = {:.12}",
        stieltjes_pairing(&g, &gt)?
    );
    println!(
        "extrapolated sum       = {:.12}",
        stieltjes_pairing_extrapolated(&g, &gt)?
    );
    println!("cumulative band sums:");
    for (m, v) in sobolev_band_sums(&s).iter().enumerate() {
        println!("  |k| < 2^{:<2} {v:.12}", m + 1);
    }
    Ok(())
}
