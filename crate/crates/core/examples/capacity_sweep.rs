//! Sweep the owned capacity W and watch t_a, the configuration and the optimum move.

use credit_eoq::{sweep, ModelParams, ParamName, Variant};

fn main() {
    let values: Vec<f64> = (0..9).map(|i| 60_000.0 + 20_000.0 * i as f64).collect();
    println!("{:>9} {:>8} {:>13} {:>4} {:>14} {:>14}", "W", "config", "t_a", "case", "T*", "TVC");
    for row in sweep(&ModelParams::ROW3, ParamName::OwCapacity, &values, Variant::Corrected) {
        match row.outcome {
            Ok(r) => println!(
                "{:>9} {:>8} {:>13.10} {:>4} {:>14.11} {:>14.6}",
                row.value,
                format!("{:?}", r.configuration),
                r.derived.t_a,
                r.global.case.to_string(),
                r.global.t_star,
                r.global.tvc
            ),
            Err(e) => println!("{:>9} error: {e}", row.value),
        }
    }
}
