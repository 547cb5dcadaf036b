//! Runs a full experiment from a config and writes report.json and series.csv.
//!
//! cargo run --example experiment_report -- configs/ground_truth.json /tmp/gt

use circlemap::pipeline::{run_experiment, ExperimentConfig};

fn main() -> circlemap::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/mixed.json").into());
    let cfg = ExperimentConfig::from_path(&path)?;
    let dir = args.next().unwrap_or_else(|| cfg.output_dir.clone());

    let out = run_experiment(&cfg)?;
    let (report, series) = out.write(&dir)?;
    let r = &out.report;
    println!(
        "{}: converged = {}, passed = {}, exit code {}",
        cfg.function.kind(),
        r.solve.converged,
        r.passed,
        r.exit_code()
    );
    if let Some(id) = &r.checks.conjugate_identity {
        println!("conjugate identity error {:e}", id.sup_error);
    }
    println!("wrote {} and {}", report.display(), series.display());
    Ok(())
}
