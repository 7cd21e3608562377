//! Closed-form branch costs next to the integrating oracle.

use credit_eoq::cost::closed_form_breakdown;
use credit_eoq::{compute_derived, oracle_total_cost, ModelParams, OracleConfig, Provenance, Variant};

fn main() -> credit_eoq::Result<()> {
    let p = ModelParams::ROW3;
    let d = compute_derived(&p)?;
    let oracle = OracleConfig::default().with_extended_precision(true);

    for b in &d.branches {
        if b.provenance == Provenance::OracleOnly {
            println!("{}: oracle only", b.case);
            continue;
        }
        println!("{} on ({:.10}, {:.10}]", b.case, b.lo, b.hi);
        for frac in [0.1, 0.5, 0.9, 1.0] {
            let t = b.lo + (b.hi - b.lo) * frac;
            let closed = closed_form_breakdown(&p, &d, b.case, t, Variant::Corrected)?;
            let integrated = oracle_total_cost(&p, t, &oracle)?;
            let (c, o) = (closed.total(), integrated.total());
            println!("  T = {t:.12}  closed {c:.9}  oracle {o:.9}  rel {:.1e}", (c - o).abs() / o.abs());
        }
    }
    Ok(())
}
