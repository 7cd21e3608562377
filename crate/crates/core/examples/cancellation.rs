//! Why the kernels exist: e^x - x - 1 at the scale of θT in the row-3 scenario.

use credit_eoq::kernels::{em1, em1m};

fn main() {
    println!("{:>8} {:>24} {:>24} {:>10}", "x", "naive", "em1m", "naive err");
    for x in [1e-2f64, 1e-4, 1.6e-7, 1e-9, 1e-12] {
        let naive = x.exp() - x - 1.0;
        let good = em1m(x);
        println!("{x:>8.1e} {naive:>24.16e} {good:>24.16e} {:>10.1e}", ((naive - good) / good).abs());
    }
    println!();
    println!("expm1 vs em1 at 1e-7: {:e} {:e}", 1e-7f64.exp_m1(), em1(1e-7));
}
