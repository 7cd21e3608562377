//! How far the corrected case-2 earned interest moves the cost.
//!
//! With the row-3 rate of 5e-6 the correction is invisible; at 40% it is
//! worth tens of currency units a year inside (N, M).

use credit_eoq::cli::{bundled_scenario, Scenario};
use credit_eoq::cost::{earned_correction, interest_earned_case2_corrected, interest_earned_case2_original};
use credit_eoq::{solve_global, ModelParams, Variant};

fn show(name: &str, p: &ModelParams) -> credit_eoq::Result<()> {
    let (n, m) = (p.customer_credit, p.supplier_credit);
    println!("{name}: N = {n}, M = {m}, Ie = {}", p.interest_earned_rate);
    println!("  {:>10} {:>18} {:>18} {:>14}", "T", "corrected", "original", "difference");
    for i in 1..=4 {
        let t = n + (m - n) * i as f64 / 4.0;
        let c = interest_earned_case2_corrected(p, t)?;
        let o = interest_earned_case2_original(p, t)?;
        println!("  {t:>10.6} {c:>18.10} {o:>18.10} {:>14.6e}", earned_correction(p, t));
    }
    for variant in [Variant::Corrected, Variant::Original] {
        let g = solve_global(p, variant)?.global;
        println!("  {variant:<9} T* = {:.10} ({}) TVC = {:.6}", g.t_star, g.case, g.tvc);
    }
    println!();
    Ok(())
}

fn main() -> credit_eoq::Result<()> {
    show("row3", &ModelParams::ROW3)?;
    let high = Scenario::load(&bundled_scenario("high_ie.json"))?;
    show("high_ie", &high.params)
}
