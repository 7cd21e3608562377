//! Cancellation-safe exponential kernels.
//!
//! Every closed-form cost in this crate is a ratio such as `(e^x - x - 1) / x^2`
//! evaluated at `x = θT`. With realistic deterioration rates `x` sits around
//! `1e-7`, where the direct formula loses about half of the available digits.
//! Below [`SERIES_CUTOFF`] the kernels are evaluated from their Maclaurin
//! series with Horner's scheme; above it the analytic form is accurate.

/// Magnitude below which the Maclaurin series is used.
pub const SERIES_CUTOFF: f64 = 1.0;

/// Number of series terms. For `|x| < 1` the first omitted term is below
/// `1e-20` relative to the leading one.
const TERMS: usize = 24;

const fn inverse_factorials() -> [f64; TERMS + 3] {
    let mut out = [0.0; TERMS + 3];
    let mut fact = 1.0;
    let mut n = 0;
    while n < TERMS + 3 {
        if n > 0 {
            fact *= n as f64;
        }
        out[n] = 1.0 / fact;
        n += 1;
    }
    out
}

const INV_FACT: [f64; TERMS + 3] = inverse_factorials();

/// Evaluates `sum_{n >= first} weight(n) x^n / n!` by Horner's scheme.
#[inline]
fn series(x: f64, first: usize, weight: impl Fn(usize) -> f64) -> f64 {
    let last = first + TERMS - 1;
    let mut acc = 0.0;
    for n in (first..=last).rev() {
        acc = acc * x + weight(n) * INV_FACT[n];
    }
    acc * x.powi(first as i32)
}

/// `e^x - 1`.
#[inline]
pub fn em1(x: f64) -> f64 {
    x.exp_m1()
}

/// `e^x - x - 1`, accurate to a few ulps for every finite `x`.
pub fn em1m(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        series(x, 2, |_| 1.0)
    } else {
        x.exp_m1() - x
    }
}

/// `x e^x - e^x + 1`, the numerator of `d/dT [(e^{θT} - θT - 1) / T]`.
pub fn xexp_em1(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        series(x, 2, |n| (n - 1) as f64)
    } else {
        x * x.exp() - x.exp_m1()
    }
}

/// `x^2 e^x - 2x e^x + 2e^x - 2`, the numerator of the second derivative.
pub fn x2exp_em2(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        series(x, 3, |n| ((n - 1) * (n - 2)) as f64)
    } else {
        (x * x - 2.0 * x + 2.0) * x.exp() - 2.0
    }
}

/// `(e^x - x - 1) / x^2`, with the limit `1/2` at zero.
pub fn em1m_over_sq(x: f64) -> f64 {
    if x == 0.0 {
        0.5
    } else if x.abs() < SERIES_CUTOFF {
        series_shifted(x, 2)
    } else {
        em1m(x) / (x * x)
    }
}

/// `sum_{n >= shift} x^{n - shift} / n!`
fn series_shifted(x: f64, shift: usize) -> f64 {
    let mut acc = 0.0;
    for n in (shift..shift + TERMS).rev() {
        acc = acc * x + INV_FACT[n];
    }
    acc
}
