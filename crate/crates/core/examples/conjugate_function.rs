//! Conjugates a trigonometric polynomial three ways and compares them.

use circlemap::conjugation::{conjugate_quadrature, conjugate_spectral};
use circlemap::grid::spacing;
use circlemap::{analyze, synthesize, FunctionSpec, GridFunction};

fn main() -> circlemap::Result<()> {
    let f = FunctionSpec::from_json(
        r#"{"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0], [2, 0.0, 0.5], [5, 0.2, 0.1]]}}"#,
    )?;
    for n in [256, 1024, 4096] {
        let g = GridFunction::from_fn(n, |t| f.evaluator().unwrap().eval(t))?;
        let spectral = synthesize(&conjugate_spectral(&analyze(&g)), n)?;
        // cos kt ↦ sin kt, sin kt ↦ −cos kt
        let exact = GridFunction::from_fn(n, |t| {
            t.sin() - 0.5 * (2.0 * t).cos() + 0.2 * (5.0 * t).sin() - 0.1 * (5.0 * t).cos()
        })?;
        let quad = conjugate_quadrature(&g, spacing(n))?;
        println!(
            "n = {n:5}  |spectral − exact| = {:.3e}  |quadrature − spectral| = {:.3e}",
            spectral.sup_distance(&exact)?,
            quad.sup_distance(&spectral)?
        );
    }
    Ok(())
}
