//! Solve the bundled row-3 scenario and print every branch minimum.
//!
//! cargo run --example solve_row3

use credit_eoq::{solve_global, ModelParams, Variant};

fn main() -> credit_eoq::Result<()> {
    let report = solve_global(&ModelParams::ROW3, Variant::Corrected)?;
    let d = &report.derived;
    println!("configuration {:?}", report.configuration);
    println!("t_a = {:.10}  W* = {:.4}  t_W* = {:.10}", d.t_a, d.w_star, d.t_wstar);
    println!();
    println!("{:<4} {:>14} {:>14} {:>16} {:>16}", "case", "lo", "hi", "T_min", "TVC");
    for b in &report.branches {
        let hi = b.hi.map_or("inf".to_string(), |h| format!("{h:.10}"));
        println!(
            "{:<4} {:>14.10} {:>14} {:>16.12} {:>16.6}",
            b.case.to_string(),
            b.lo,
            hi,
            b.minimizer,
            b.min_value
        );
    }
    let g = &report.global;
    println!();
    println!("T* = {:.12} ({})  Q* = {:.4}  TVC = {:.6}", g.t_star, g.case, g.q_star, g.tvc);
    Ok(())
}
