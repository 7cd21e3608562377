#![allow(dead_code)]

use credit_eoq::{compute_derived, Configuration, ModelParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Parameters drawn to land in `want` with `t_wstar > M`, so every branch
/// except the unbounded tail has a closed form.
pub fn random_params(rng: &mut StdRng, want: Configuration) -> ModelParams {
    loop {
        let theta = log_uniform(rng, 1e-5, 0.3);
        let demand = log_uniform(rng, 100.0, 1e7);
        let unit_cost = rng.gen_range(1.0..50.0);
        let hold_ow = rng.gen_range(0.2..5.0);
        let m = rng.gen_range(0.01..1.0);
        let n = m * rng.gen_range(0.1..0.9);
        let t_a = match want {
            Configuration::Config1 => n * rng.gen_range(0.05..0.95),
            _ => n + (m - n) * rng.gen_range(0.05..0.95),
        };
        let p = ModelParams {
            theta,
            demand,
            order_cost: log_uniform(rng, 1.0, 1e4),
            unit_cost,
            unit_price: unit_cost * rng.gen_range(1.05..2.0),
            hold_rw: hold_ow * rng.gen_range(1.05..3.0),
            hold_ow,
            interest_earned_rate: log_uniform(rng, 1e-6, 0.1),
            interest_charged_rate: rng.gen_range(0.0..0.3),
            customer_credit: n,
            supplier_credit: m,
            ow_capacity: demand * (theta * t_a).exp_m1() / theta,
        };
        if let Ok(d) = compute_derived(&p) {
            if d.configuration == want && d.t_wstar > m {
                return p;
            }
        }
    }
}

/// Valid parameters in any configuration, including ones where `t_a` lies
/// past `M` or the funds at `M` already cover the whole order.
pub fn any_params(rng: &mut StdRng) -> ModelParams {
    let theta = log_uniform(rng, 1e-8, 1.0);
    let demand = log_uniform(rng, 10.0, 1e7);
    let unit_cost = rng.gen_range(0.5..50.0);
    let hold_ow = rng.gen_range(0.0..5.0);
    let m = rng.gen_range(0.005..2.0);
    ModelParams {
        theta,
        demand,
        order_cost: log_uniform(rng, 0.1, 1e5),
        unit_cost,
        unit_price: unit_cost * rng.gen_range(1.0..3.0),
        hold_rw: hold_ow + rng.gen_range(0.01..5.0),
        hold_ow,
        interest_earned_rate: rng.gen_range(0.0..0.5),
        interest_charged_rate: rng.gen_range(0.0..0.5),
        customer_credit: m * rng.gen_range(0.0..0.99),
        supplier_credit: m,
        ow_capacity: demand * log_uniform(rng, 1e-4, 10.0),
    }
}

/// Alternates between the two closed-form configurations.
pub fn random_scenarios(seed: u64, count: usize) -> Vec<ModelParams> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let want = if i % 2 == 0 {
                Configuration::Config1
            } else {
                Configuration::Config2
            };
            random_params(&mut rng, want)
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// The exact value of an `f64`.
pub fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("representable")
}

const FIXED_BITS: usize = 600;

/// `sum_k w(k) x^k / k!` in fixed point with a `2^-600` unit, summed until the
/// terms vanish (at most 400 of them). `x` enters exactly.
pub fn exact_series(x: f64, weight: impl Fn(u32) -> i64) -> BigRational {
    let one = BigInt::one() << FIXED_BITS;
    let exact = q(x);
    let fixed = (exact.numer() << FIXED_BITS) / exact.denom();
    let mut term = one.clone();
    let mut sum = BigInt::zero();
    for k in 0..400u32 {
        if k > 0 {
            term = ((&term * &fixed) >> FIXED_BITS) / BigInt::from(k);
            if term.is_zero() {
                break;
            }
        }
        sum += &term * BigInt::from(weight(k));
    }
    BigRational::new(sum, one)
}

pub fn exact_em1(x: f64) -> f64 {
    to_f64(&exact_series(x, |k| i64::from(k >= 1)))
}

pub fn exact_em1m(x: f64) -> f64 {
    to_f64(&exact_series(x, |k| i64::from(k >= 2)))
}

/// `x e^x - e^x + 1`
pub fn exact_xexp_em1(x: f64) -> f64 {
    to_f64(&exact_series(x, |k| (k as i64 - 1).max(0)))
}

/// `x^2 e^x - 2x e^x + 2e^x - 2`
pub fn exact_x2exp_em2(x: f64) -> f64 {
    to_f64(&exact_series(x, |k| if k >= 3 { (k as i64 - 1) * (k as i64 - 2) } else { 0 }))
}

/// Case-2 earned interest, both variants and their difference, in exact
/// arithmetic on the given `f64` inputs: `(corrected, original, delta)`.
pub fn exact_case2_earned(p: &ModelParams, cycle: f64) -> (BigRational, BigRational, BigRational) {
    let (s, d, ie) = (q(p.unit_price), q(p.demand), q(p.interest_earned_rate));
    let (n, m, t) = (q(p.customer_credit), q(p.supplier_credit), q(cycle));
    let two = BigRational::from_integer(BigInt::from(2));
    let sd = &s * &d;
    let spread = &t * &t - &n * &n;
    let denom = &two * &t;
    let corrected = (&sd * &ie * &spread
        + (&two * &sd * &t + &sd * &spread * &ie) * &ie * (&m - &t))
        / &denom;
    let original = &s * &ie * &d * (&two * &m * &t - &n * &n - &t * &t) / &denom;
    let delta = &sd * &ie * &ie * &spread * (&m - &t) / &denom;
    (corrected, original, delta)
}
