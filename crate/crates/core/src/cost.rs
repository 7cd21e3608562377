//! Closed-form annual cost components and branch evaluators.
//!
//! Each branch cost is `ordering + deterioration + holding + charged - earned`.
//! The rented-warehouse regime of `N < T <= M` is evaluated by [`tc3_formula`]
//! exactly as published (with the corrected interest-earned term); every
//! other closed-form branch is assembled from the component functions here.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{em1m_over_sq, x2exp_em2, xexp_em1};
use crate::model::{check_cycle, order_quantity, CaseId, DerivedQuantities};
use crate::params::ModelParams;

/// Which interest-earned expression is used on `N < T <= M` inside TC₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Interest on the revenue ramp from `N` to `T` plus interest on the
    /// accumulated balance from `T` to `M`.
    #[default]
    Corrected,
    /// The earlier expression `sIₑD(2MT - N² - T²)/(2T)`.
    Original,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Variant::Corrected),
            "original" => Ok(Variant::Original),
            _ => Err(Error::InvalidParams(format!(
                "unknown variant '{s}' (expected corrected or original)"
            ))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Corrected => "corrected",
            Variant::Original => "original",
        })
    }
}

/// Annual cost split by component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CostBreakdown {
    pub ordering: f64,
    pub deterioration: f64,
    pub holding_rw: f64,
    pub holding_ow: f64,
    pub interest_charged: f64,
    pub interest_earned: f64,
}

impl CostBreakdown {
    pub fn total(&self) -> f64 {
        self.ordering + self.deterioration + self.holding_rw + self.holding_ow
            + self.interest_charged
            - self.interest_earned
    }
}

/// `∫₀^T I(t) dt = D(e^{θT} - θT - 1)/θ²`.
fn occupancy(p: &ModelParams, cycle: f64) -> f64 {
    p.demand * cycle * cycle * em1m_over_sq(p.theta * cycle)
}

/// Annual deterioration cost `c(Q - DT)/T = cD(e^{θT} - θT - 1)/(θT)`.
pub fn deterioration_cost(p: &ModelParams, cycle: f64) -> Result<f64> {
    check_cycle("deterioration_cost", cycle)?;
    let x = p.theta * cycle;
    Ok(p.unit_cost * p.demand * x * em1m_over_sq(x))
}

/// Annual holding cost in the owned and rented warehouses, `(holding_ow, holding_rw)`.
///
/// Stock above `W` sits in the rented warehouse until time `T - t_a`; the
/// rented occupancy is integrated directly as `D e^{θt_a}(e^{θu} - θu - 1)/θ²`
/// with `u = T - t_a` so that short overflow periods do not cancel.
pub fn holding_cost_split(p: &ModelParams, cycle: f64, t_a: f64) -> Result<(f64, f64)> {
    check_cycle("holding_cost_split", cycle)?;
    let (ow, rw) = if cycle <= t_a {
        (occupancy(p, cycle), 0.0)
    } else {
        let u = cycle - t_a;
        let ow = p.ow_capacity * u + occupancy(p, t_a);
        let rw = (p.theta * t_a).exp() * p.demand * u * u * em1m_over_sq(p.theta * u);
        (ow, rw)
    };
    Ok((p.hold_ow * ow / cycle, p.hold_rw * rw / cycle))
}

fn check_case2(op: &str, p: &ModelParams, cycle: f64) -> Result<()> {
    if p.customer_credit < cycle && cycle <= p.supplier_credit {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{op}: T = {cycle} outside (N, M] = ({}, {}]",
            p.customer_credit, p.supplier_credit
        )))
    }
}

fn earned_case2_corrected(p: &ModelParams, cycle: f64) -> f64 {
    let (n, m, ie) = (p.customer_credit, p.supplier_credit, p.interest_earned_rate);
    let sd = p.unit_price * p.demand;
    let spread = (cycle - n) * (cycle + n);
    (sd * ie * spread + (2.0 * sd * cycle + sd * spread * ie) * ie * (m - cycle)) / (2.0 * cycle)
}

fn earned_case2_original(p: &ModelParams, cycle: f64) -> f64 {
    let (n, m) = (p.customer_credit, p.supplier_credit);
    p.unit_price * p.interest_earned_rate * p.demand * (2.0 * m * cycle - n * n - cycle * cycle)
        / (2.0 * cycle)
}

/// Interest earned per year when `N < T <= M`: the revenue ramp `sDt` earns
/// from `N` to `T`, then revenue plus the interest accrued so far earns from
/// `T` to `M`.
pub fn interest_earned_case2_corrected(p: &ModelParams, cycle: f64) -> Result<f64> {
    check_case2("interest_earned_case2_corrected", p, cycle)?;
    Ok(earned_case2_corrected(p, cycle))
}

/// The superseded case-2 expression, which ignores interest earned between `N` and `T`.
pub fn interest_earned_case2_original(p: &ModelParams, cycle: f64) -> Result<f64> {
    check_case2("interest_earned_case2_original", p, cycle)?;
    Ok(earned_case2_original(p, cycle))
}

/// `sDIₑ²(T² - N²)(M - T)/(2T)`: how much the corrected case-2 term exceeds the original.
pub fn earned_correction(p: &ModelParams, cycle: f64) -> f64 {
    let (n, m, ie) = (p.customer_credit, p.supplier_credit, p.interest_earned_rate);
    p.unit_price * p.demand * ie * ie * (cycle - n) * (cycle + n) * (m - cycle) / (2.0 * cycle)
}

/// Interest earned per year when the cycle ends before customers start paying.
fn earned_flat(p: &ModelParams) -> f64 {
    p.unit_price * p.demand * p.interest_earned_rate * (p.supplier_credit - p.customer_credit)
}

/// Interest earned per year when the cycle outlasts the supplier's credit period.
fn earned_after_m(p: &ModelParams, cycle: f64) -> f64 {
    let (n, m) = (p.customer_credit, p.supplier_credit);
    p.unit_price * p.interest_earned_rate * p.demand * (m - n) * (m + n) / (2.0 * cycle)
}

/// Interest charged per year on the purchase cost of stock still held after `M`:
/// `cIₚD(e^{θ(T-M)} - θ(T-M) - 1)/(θ²T)`.
pub fn interest_charged_after_m(p: &ModelParams, cycle: f64) -> f64 {
    let u = (cycle - p.supplier_credit).max(0.0);
    p.unit_cost * p.interest_charged_rate * p.demand * u * u * em1m_over_sq(p.theta * u) / cycle
}

/// `(earned, charged)` for the regimes whose interest terms are not the case-2 ones.
///
/// TC₅ has no closed form; its terms come from the trajectory oracle.
pub fn interest_terms_other_cases(
    p: &ModelParams,
    d: &DerivedQuantities,
    cycle: f64,
    case: CaseId,
) -> Result<(f64, f64)> {
    match d.branch(case) {
        Some(b) if b.contains(cycle) => {}
        _ => return Err(Error::CaseMismatch { case, t: cycle }),
    }
    if case == CaseId::Tc5 {
        return crate::oracle::oracle_interest(
            p,
            cycle,
            &crate::oracle::OracleConfig::default(),
        );
    }
    Ok(accrual_terms(p, case, cycle, Variant::Corrected))
}

fn accrual_terms(p: &ModelParams, case: CaseId, cycle: f64, variant: Variant) -> (f64, f64) {
    match case {
        CaseId::Tc1 | CaseId::Tc2 => (earned_flat(p), 0.0),
        CaseId::Tc3 if variant == Variant::Original => (earned_case2_original(p, cycle), 0.0),
        CaseId::Tc3 | CaseId::Tc6 => (earned_case2_corrected(p, cycle), 0.0),
        CaseId::Tc4 | CaseId::Tc5 => (earned_after_m(p, cycle), interest_charged_after_m(p, cycle)),
    }
}

/// Component breakdown of a closed-form branch, evaluated at any `T > 0` (the
/// formula is continued smoothly past the branch interval).
///
/// `variant` only affects TC₃.
pub fn closed_form_breakdown(
    p: &ModelParams,
    d: &DerivedQuantities,
    case: CaseId,
    cycle: f64,
    variant: Variant,
) -> Result<CostBreakdown> {
    check_cycle("closed_form_breakdown", cycle)?;
    if case == CaseId::Tc5 {
        return Err(Error::Domain("TC5 has no closed form".into()));
    }
    // The holding split follows the regime, not the actual position of T.
    let t_a = match case {
        CaseId::Tc1 | CaseId::Tc6 => f64::INFINITY,
        _ => d.t_a,
    };
    let (holding_ow, holding_rw) = holding_cost_split(p, cycle, t_a)?;
    let (interest_earned, interest_charged) = accrual_terms(p, case, cycle, variant);
    Ok(CostBreakdown {
        ordering: p.order_cost / cycle,
        deterioration: deterioration_cost(p, cycle)?,
        holding_rw,
        holding_ow,
        interest_charged,
        interest_earned,
    })
}

/// Total cost of the `N < T <= M` rented-warehouse regime as a formula in `T > 0`:
///
/// ```text
/// A/T + D(k + cθ)(e^{θT} - θT - 1)/(θ²T)
///     - (k - h)[D(e^{θt_a} - θt_a - 1) + θ²W(T - t_a)]/(θ²T) - earned(T)
/// ```
pub fn tc3_formula(p: &ModelParams, d: &DerivedQuantities, cycle: f64, variant: Variant) -> f64 {
    let (theta, t_a) = (p.theta, d.t_a);
    let stock = p.demand * (p.hold_rw + p.unit_cost * theta) * cycle * em1m_over_sq(theta * cycle);
    let owned = p.demand * t_a * t_a * em1m_over_sq(theta * t_a) + p.ow_capacity * (cycle - t_a);
    let earned = match variant {
        Variant::Corrected => earned_case2_corrected(p, cycle),
        Variant::Original => earned_case2_original(p, cycle),
    };
    p.order_cost / cycle + stock - (p.hold_rw - p.hold_ow) * owned / cycle - earned
}

/// [`tc3_formula`] restricted to the TC₃ branch of the active configuration.
pub fn tc3(p: &ModelParams, d: &DerivedQuantities, cycle: f64, variant: Variant) -> Result<f64> {
    match d.branch(CaseId::Tc3) {
        Some(b) if b.contains(cycle) => Ok(tc3_formula(p, d, cycle, variant)),
        _ => Err(Error::Domain(format!("tc3: T = {cycle} outside the TC3 branch"))),
    }
}

/// First and second derivatives of the corrected TC₃ formula.
pub fn tc3_derivatives(p: &ModelParams, d: &DerivedQuantities, cycle: f64) -> Result<(f64, f64)> {
    tc3_derivatives_with(p, d, cycle, Variant::Corrected)
}

/// First and second derivatives of [`tc3_formula`] for either variant.
///
/// Writing the cost as `B/T + D(k + cθ)g(T)/T - (k - h)W - earned(T)` with
/// `g = (e^{θT} - θT - 1)/θ²` and `B = A + (k - h)D(θt_a e^{θt_a} - e^{θt_a} + 1)/θ²`
/// gives closed derivatives whose exponential numerators are the
/// cancellation-safe kernels.
pub fn tc3_derivatives_with(
    p: &ModelParams,
    d: &DerivedQuantities,
    cycle: f64,
    variant: Variant,
) -> Result<(f64, f64)> {
    check_cycle("tc3_derivatives", cycle)?;
    let theta = p.theta;
    let t2 = cycle * cycle;
    let t3 = t2 * cycle;
    let th2 = theta * theta;
    let b = p.order_cost + (p.hold_rw - p.hold_ow) * p.demand * xexp_em1(theta * d.t_a) / th2;
    let k1 = p.demand * (p.hold_rw + p.unit_cost * theta);
    let x = theta * cycle;

    let (n, m, ie) = (p.customer_credit, p.supplier_credit, p.interest_earned_rate);
    let a = p.unit_price * p.demand * ie;
    let n2 = n * n;
    let mut e1 = a * (0.5 * n2 / t2 - 0.5);
    let mut e2 = -a * n2 / t3;
    if variant == Variant::Corrected {
        e1 += 0.5 * a * ie * (m - 2.0 * cycle + m * n2 / t2);
        e2 -= a * ie * (1.0 + m * n2 / t3);
    }

    let first = -b / t2 + k1 * xexp_em1(x) / (th2 * t2) - e1;
    let second = 2.0 * b / t3 + k1 * x2exp_em2(x) / (th2 * t3) - e2;
    Ok((first, second))
}

/// `f(T) = T² + N² + Iₑ(N² - T² + 2T³)`, positive for `T >= 0` when `0 < Iₑ < 1`.
pub fn lemma_f(customer_credit: f64, earned_rate: f64, cycle: f64) -> Result<f64> {
    if !(earned_rate > 0.0 && earned_rate < 1.0) {
        return Err(Error::Domain(format!(
            "lemma_f: Ie = {earned_rate} outside (0, 1)"
        )));
    }
    if !(cycle >= 0.0) {
        return Err(Error::Domain(format!("lemma_f: T = {cycle} is negative")));
    }
    let (n2, t2) = (customer_credit * customer_credit, cycle * cycle);
    Ok(t2 + n2 + earned_rate * (n2 - t2 + 2.0 * t2 * cycle))
}

/// `Δ₃ = (θM)² · TC₃'(M)`; its sign tells whether TC₃ still decreases at `M`.
pub fn delta3(p: &ModelParams, d: &DerivedQuantities) -> f64 {
    let m = p.supplier_credit;
    let (first, _) = tc3_derivatives(p, d, m).expect("M > 0 for valid parameters");
    (p.theta * m).powi(2) * first
}

/// Purchase cost of one order, `cQ(T)`.
pub fn purchase_cost(p: &ModelParams, cycle: f64) -> Result<f64> {
    Ok(p.unit_cost * order_quantity(p, cycle)?)
}
