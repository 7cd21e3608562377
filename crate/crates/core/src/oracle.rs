//! Ground-truth annual cost by direct integration of the inventory trajectory
//! and the revenue and financing accruals. Nothing here reuses the closed forms
//! of [`crate::cost`]; agreement between the two is what the validation
//! suite checks.

use crate::cost::CostBreakdown;
use crate::error::{Error, Result};
use crate::model::check_cycle;
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Relative tolerance of each adaptive Simpson integral, in `(0, 1e-3]`.
    pub rel_tol: f64,
    /// Maximum bisection depth, in `[10, 60]`.
    pub max_depth: u32,
    /// Integrate `θ I(t)` for the deteriorated quantity instead of differencing
    /// `Q - DT`, which loses about `log10(2/θT)` digits.
    pub extended_precision: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_depth: 40,
            extended_precision: false,
        }
    }
}

impl OracleConfig {
    pub fn new(rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::InvalidParams(format!(
                "oracle tolerance {rel_tol} outside (0, 1e-3]"
            )));
        }
        if !(10..=60).contains(&max_depth) {
            return Err(Error::InvalidParams(format!(
                "oracle depth {max_depth} outside [10, 60]"
            )));
        }
        Ok(Self {
            rel_tol,
            max_depth,
            extended_precision: false,
        })
    }

    pub fn with_extended_precision(mut self, on: bool) -> Self {
        self.extended_precision = on;
        self
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    adaptive_simpson_abs(f, a, b, rel_tol, 0.0, max_depth)
}

/// As [`adaptive_simpson`], but an error below `abs_tol` is always accepted.
/// Needed when the integrand is a small difference of large quantities and
/// carries rounding noise far above `rel_tol` times its own size.
pub fn adaptive_simpson_abs<F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = (rel_tol * whole.abs()).max(abs_tol);
    let eps = if eps > 0.0 { eps } else { rel_tol };
    let mut ctx = Simpson {
        f: &f,
        max_depth,
        a0: a,
        b0: b,
        rel_tol,
    };
    ctx.refine(a, b, fa, fm, fb, whole, eps, max_depth)
}

struct Simpson<'a, F> {
    f: &'a F,
    max_depth: u32,
    a0: f64,
    b0: f64,
    rel_tol: f64,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = ((self.f)(lm), (self.f)(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let sum = left + right;
        let delta = sum - whole;
        // The second clause stops refinement once the estimates agree to rounding.
        if delta.abs() <= 15.0 * eps || delta.abs() <= 64.0 * f64::EPSILON * sum.abs() {
            return Ok(sum + delta / 15.0);
        }
        if depth == 0 || !sum.is_finite() {
            return Err(Error::Convergence {
                a: self.a0,
                b: self.b0,
                tolerance: self.rel_tol,
                depth: self.max_depth,
            });
        }
        let l = self.refine(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?;
        Ok(l + r)
    }
}

/// Inventory trajectory of one cycle, including the `θ = 0` limit.
struct Trajectory {
    demand: f64,
    theta: f64,
    cycle: f64,
}

impl Trajectory {
    fn level(&self, t: f64) -> f64 {
        let remaining = self.cycle - t;
        if self.theta > 0.0 {
            self.demand / self.theta * (self.theta * remaining).exp_m1()
        } else {
            self.demand * remaining
        }
    }

    /// Time needed to sell `stock` units from a standing start.
    fn depletion_time(&self, stock: f64) -> f64 {
        if self.theta > 0.0 {
            (self.theta * stock / self.demand).ln_1p() / self.theta
        } else {
            stock / self.demand
        }
    }
}

/// Annual cost at cycle length `cycle`, assembled from numerically integrated accruals.
///
/// The parameters are not validated, so degenerate settings such as `θ = 0`
/// or zero holding rates can be evaluated.
pub fn oracle_total_cost(p: &ModelParams, cycle: f64, cfg: &OracleConfig) -> Result<CostBreakdown> {
    check_cycle("oracle_total_cost", cycle)?;
    let traj = Trajectory {
        demand: p.demand,
        theta: p.theta,
        cycle,
    };
    // Errors far below rel_tol of the whole stock-time area are accepted.
    let floor = 1e-3 * cfg.rel_tol * traj.level(0.0).max(p.ow_capacity) * cycle;
    let integrate = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| {
        adaptive_simpson_abs(f, a, b, cfg.rel_tol, floor, cfg.max_depth)
    };

    // Stock exceeds the owned capacity until the kink, where min(I, W) bends.
    let kink = (cycle - traj.depletion_time(p.ow_capacity)).clamp(0.0, cycle);
    let owned = |t: f64| traj.level(t).min(p.ow_capacity);
    let rented = |t: f64| (traj.level(t) - p.ow_capacity).max(0.0);
    let owned_units = integrate(&owned, 0.0, kink)? + integrate(&owned, kink, cycle)?;
    let rented_units = integrate(&rented, 0.0, kink)?;

    let deteriorated = if cfg.extended_precision {
        p.theta * integrate(&|t| traj.level(t), 0.0, cycle)?
    } else {
        traj.level(0.0) - p.demand * cycle
    };

    let (interest_earned, interest_charged) = oracle_interest(p, cycle, cfg)?;
    Ok(CostBreakdown {
        ordering: p.order_cost / cycle,
        deterioration: p.unit_cost * deteriorated / cycle,
        holding_rw: p.hold_rw * rented_units / cycle,
        holding_ow: p.hold_ow * owned_units / cycle,
        interest_charged,
        interest_earned,
    })
}

/// Annual `(earned, charged)` interest.
///
/// Sales revenue accumulates along `R(t) = sD·min(t, T)`. From `N` until
/// `min(T, M)` interest accrues on `R(t)`; between `max(T, N)` and `M` the
/// balance is flat and interest accrues on `R(T)` plus the interest already
/// earned. After `M` the retailer settles with the supplier: if the funds on
/// hand at `M` (revenue `sDM` with its interest) cover the purchase cost, the
/// cost of stock still unsold is financed at `Iₚ`; otherwise the funds are
/// paid at `M` and the shortfall carries simple interest until `T`.
pub fn oracle_interest(p: &ModelParams, cycle: f64, cfg: &OracleConfig) -> Result<(f64, f64)> {
    check_cycle("oracle_interest", cycle)?;
    let (n, m, ie) = (p.customer_credit, p.supplier_credit, p.interest_earned_rate);
    let sales_rate = p.unit_price * p.demand;
    let revenue = |t: f64| sales_rate * t.min(cycle);
    let horizon = cycle.max(m);
    let floor = 1e-3 * cfg.rel_tol * sales_rate * horizon * horizon;
    let integrate = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| {
        adaptive_simpson_abs(f, a, b, cfg.rel_tol, floor, cfg.max_depth)
    };

    let mut accrued = 0.0;
    if cycle > n {
        accrued += ie * integrate(&revenue, n, cycle.min(m))?;
    }
    if cycle < m {
        let start = cycle.max(n);
        accrued += ie * (m - start) * (revenue(cycle) + accrued);
    }
    let earned = accrued / cycle;

    let charged = if cycle <= m {
        0.0
    } else {
        let traj = Trajectory {
            demand: p.demand,
            theta: p.theta,
            cycle,
        };
        let purchase = p.unit_cost * traj.level(0.0);
        let funds = sales_rate * m + ie * integrate(&|t| sales_rate * t, 0.0, m)?;
        if purchase <= funds {
            p.interest_charged_rate * integrate(&|t| p.unit_cost * traj.level(t), m, cycle)? / cycle
        } else {
            p.interest_charged_rate * (purchase - funds) * (cycle - m) / cycle
        }
    };
    Ok((earned, charged))
}

/// Central difference `[f(T + δ) - f(T - δ)] / 2δ` with `δ = rel_step·T`.
///
/// Fails if the stencil touches any of `breakpoints`.
pub fn numeric_derivative<F>(f: F, cycle: f64, rel_step: f64, breakpoints: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let step = rel_step * cycle.abs();
    let (lo, hi) = (cycle - step, cycle + step);
    if let Some(&b) = breakpoints.iter().find(|&&b| lo <= b && b <= hi) {
        return Err(Error::Breakpoint {
            lo,
            hi,
            breakpoint: b,
        });
    }
    Ok((f(hi) - f(lo)) / (hi - lo))
}

/// Default relative step of [`numeric_derivative`].
pub const DEFAULT_REL_STEP: f64 = 1e-7;
