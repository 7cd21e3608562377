//! Shape of the TC3 branch: derivatives, the sign test at M, and the lemma polynomial.

use credit_eoq::cost::{delta3, lemma_f, tc3_derivatives, tc3_formula};
use credit_eoq::{compute_derived, ModelParams, Variant};

fn main() -> credit_eoq::Result<()> {
    let p = ModelParams::ROW3;
    let d = compute_derived(&p)?;
    let (n, m) = (p.customer_credit, p.supplier_credit);

    println!("{:>14} {:>18} {:>16} {:>18}", "T", "TC3", "TC3'", "TC3''");
    for i in 0..=8 {
        let t = n + (m - n) * i as f64 / 8.0;
        let (first, second) = tc3_derivatives(&p, &d, t)?;
        let cost = tc3_formula(&p, &d, t, Variant::Corrected);
        println!("{t:>14.10} {cost:>18.8} {first:>16.4} {second:>18.6e}");
    }

    let delta = delta3(&p, &d);
    println!();
    println!("delta3 = {delta:.6e}");
    if delta > 0.0 {
        println!("TC3 is already rising at M, so its minimum is interior or at N");
    } else {
        println!("TC3 still falls at M, so its minimum is M");
    }

    println!();
    for t in [0.0, 0.5, 1.0, 2.0] {
        println!("f({t}) = {:.10}", lemma_f(n, p.interest_earned_rate, t)?);
    }
    Ok(())
}
