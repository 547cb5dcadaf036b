//! Unbounded Fejér means of the conjugate of Σ ε(n)/n · sin nt.

use circlemap::pipeline::run_counterexample;
use circlemap::EpsilonRule;

fn main() -> circlemap::Result<()> {
    let rules = [
        EpsilonRule::inv_log(2.0),
        EpsilonRule::InvLogLog { offset: 3.0 },
    ];
    let orders = [16, 64, 256, 1024, 4096];
    for rule in &rules {
        println!("{}", rule.name());
        for row in run_counterexample(rule, &orders, None)? {
            println!(
                "  N = {:5}  sup = {:.12}  closed form = {:.12}",
                row.order, row.computed_sup, row.closed_form
            );
        }
    }
    Ok(())
}
