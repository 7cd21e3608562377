//! Build a scenario from JSON text and render the same reports the binary writes.

use credit_eoq::cli::{solve_scenario, OutputFormat, Scenario};
use credit_eoq::Variant;

const CONFIG: &str = r#"{
    "name": "fast-movers",
    "theta": 0.02,
    "demand": 50000.0,
    "order_cost": 300.0,
    "unit_cost": 4.0,
    "unit_price": 6.5,
    "hold_rw": 1.8,
    "hold_ow": 0.6,
    "interest_earned_rate": 0.04,
    "interest_charged_rate": 0.12,
    "customer_credit": 0.05,
    "supplier_credit": 0.12,
    "ow_capacity": 1500.0
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = Scenario::from_json(CONFIG)?;
    print!("{}", solve_scenario(&scenario, Variant::Corrected, OutputFormat::Csv)?);
    println!();
    let json = solve_scenario(&scenario, Variant::Corrected, OutputFormat::Json)?;
    let doc: serde_json::Value = serde_json::from_str(&json)?;
    println!("global: {}", doc["global"]);
    Ok(())
}
