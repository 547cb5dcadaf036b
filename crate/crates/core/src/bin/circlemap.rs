use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use circlemap::catalog::{EpsilonRule, KINDS};
use circlemap::ground_truth::synthesize_ground_truth;
use circlemap::pipeline::{self, ExperimentConfig, GroundTruthExport};
use circlemap::{Error, Result};

#[derive(Parser)]
#[command(
    name = "circlemap",
    version,
    about = "Conjugate functions and circle homeomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for h and write report.json and series.csv.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Grid size; overrides `solver.n`.
        #[arg(long)]
        grid: Option<usize>,
        /// Print the report to stdout.
        #[arg(long)]
        json: bool,
    },
    /// Check an existing h series against the config's f.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// CSV with `t` and `h` columns.
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the Fejér-mean sup against its closed form.
    Counterexample {
        /// JSON file {"epsilon_rule": {...}, "orders": [...]}.
        #[arg(long, conflicts_with_all = ["rule", "orders"])]
        config: Option<PathBuf>,
        /// Epsilon rule as JSON, e.g. '{"name": "inv_log", "offset": 2}'.
        #[arg(long)]
        rule: Option<String>,
        /// Comma-separated ascending orders N.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Fit f for G(z) = z + βz² and write it with the exact h.
    GroundTruth {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List the function kinds.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterexampleConfig {
    epsilon_rule: EpsilonRule,
    orders: Vec<usize>,
    #[serde(default)]
    grid: Option<usize>,
}

const KIND_EXAMPLES: [&str; 5] = [
    r#"{"kind": "trig_poly", "params": {"terms": [[1, 1.0, 0.0], [3, 0.0, 0.5]]}}"#,
    r#"{"kind": "lacunary_sin", "params": {"epsilon_rule": {"name": "inv_log", "offset": 2}, "terms": 64}}"#,
    r#"{"kind": "weierstrass_cos", "params": {"a": 0.5, "b": 3, "terms": 8}}"#,
    r#"{"kind": "piecewise_linear", "params": {"nodes": [[0.0, 0.0], [3.0, 1.0]]}}"#,
    r#"{"kind": "log_radius_of_map", "params": {"beta": 0.3}}"#,
];

fn config_error(e: impl std::fmt::Display) -> Error {
    Error::Config(e.to_string())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve {
            config,
            out,
            grid,
            json,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(n) = grid {
                cfg.solver.n = n;
            }
            let dir = out.unwrap_or_else(|| PathBuf::from(&cfg.output_dir));
            let result = pipeline::run_experiment(&cfg)?;
            result.write(&dir)?;
            emit(&result, json)?;
            Ok(result.report.exit_code())
        }
        Command::Verify {
            config,
            series,
            out,
            json,
        } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let h = pipeline::read_h_series(&series)?;
            let result = pipeline::verify_homeomorphism(&cfg, &h)?;
            if let Some(dir) = out {
                result.write(&dir)?;
            }
            emit(&result, json)?;
            Ok(result.report.exit_code())
        }
        Command::Counterexample {
            config,
            rule,
            orders,
            grid,
            out,
            json,
        } => {
            let (rule, orders, grid) = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(config_error)?;
                    let c: CounterexampleConfig =
                        serde_json::from_str(&text).map_err(config_error)?;
                    (c.epsilon_rule, c.orders, grid.or(c.grid))
                }
                None => {
                    let text =
                        rule.ok_or_else(|| config_error("--rule or --config is required"))?;
                    let rule: EpsilonRule = serde_json::from_str(&text).map_err(config_error)?;
                    (rule, orders, grid)
                }
            };
            let rows = pipeline::run_counterexample(&rule, &orders, grid)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                pipeline::write_counterexample_csv(&rows, dir.join("counterexample.csv"))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!("{:>8}  {:>24}  {:>24}", "N", "computed_sup", "closed_form");
                for r in &rows {
                    println!(
                        "{:>8}  {:>24}  {:>24}",
                        r.order, r.computed_sup, r.closed_form
                    );
                }
            }
            let agree = rows
                .iter()
                .all(|r| (r.computed_sup - r.closed_form).abs() <= 1e-10);
            Ok(if agree { 0 } else { 3 })
        }
        Command::GroundTruth {
            beta,
            grid,
            out,
            json,
        } => {
            let gt = synthesize_ground_truth(beta)?;
            let h = gt.h_exact(grid)?;
            let export = GroundTruthExport::from(&gt);
            let text = serde_json::to_string_pretty(&export)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("ground_truth.json"), text.clone() + "\n")?;
                pipeline::write_h_series(&h, dir.join("h_exact.csv"))?;
            }
            if json {
                println!("{text}");
            } else {
                println!(
                    "beta = {beta}, {} terms, fit error {:e}",
                    term_count(&gt.f),
                    gt.fit_error
                );
            }
            Ok(0)
        }
        Command::Catalog { json } => {
            if json {
                let entries: Vec<serde_json::Value> = KIND_EXAMPLES
                    .iter()
                    .map(|s| serde_json::from_str(s).expect("static example"))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&entries)?);
            } else {
                for (kind, example) in KINDS.iter().zip(KIND_EXAMPLES) {
                    println!("{kind:<18} {example}");
                }
            }
            Ok(0)
        }
    }
}

fn term_count(f: &circlemap::FunctionSpec) -> usize {
    match f {
        circlemap::FunctionSpec::TrigPoly { terms } => terms.len(),
        _ => 0,
    }
}

fn emit(result: &pipeline::RunOutput, json: bool) -> Result<()> {
    if json {
        println!("{}", result.report_json()?);
    } else {
        let r = &result.report;
        println!(
            "n = {}  converged = {}  residual = {:e}  iterations = {}  passed = {}",
            r.n, r.solve.converged, r.solve.residual, r.solve.iterations, r.passed
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(pipeline::error_exit_code(&e) as u8)
        }
    }
}
