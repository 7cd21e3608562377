//! Run the validation suite in-process, once honestly and once with the
//! original earned term swapped in under the corrected label.

use credit_eoq::cli::{bundled_scenario, validate_scenario, Scenario, ValidateOptions};

fn main() -> credit_eoq::Result<()> {
    let scenario = Scenario::load(&bundled_scenario("high_ie.json"))?;
    for inject in [false, true] {
        let opts = ValidateOptions {
            samples: 50,
            inject_original_earned: inject,
            ..ValidateOptions::default()
        };
        let summary = validate_scenario(&scenario.params, &opts)?;
        println!(
            "inject_original_earned = {inject}: passed {}, {} breaches, max rel error {:.3e}",
            summary.passed,
            summary.breaches.len(),
            summary.max_rel_error
        );
        for b in summary.breaches.iter().take(4) {
            println!("  {} {} T = {:.6} expected {:.6} actual {:.6}", b.check, b.case, b.t, b.expected, b.actual);
        }
    }
    Ok(())
}
