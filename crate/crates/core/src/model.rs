//! Inventory trajectory, derived thresholds and the partition of the cycle-length axis.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::kernels::em1;
use crate::params::{validate_params, ModelParams};

/// Stock on hand at time `t` of a cycle of length `cycle`:
/// `I(t) = (D/θ)(e^{θ(T-t)} - 1)`.
pub fn inventory_level(p: &ModelParams, cycle: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t <= cycle) {
        return Err(Error::Domain(format!(
            "inventory_level: t = {t} outside [0, {cycle}]"
        )));
    }
    Ok(p.demand / p.theta * em1(p.theta * (cycle - t)))
}

/// Order quantity `Q(T) = I(0)`.
pub fn order_quantity(p: &ModelParams, cycle: f64) -> Result<f64> {
    check_cycle("order_quantity", cycle)?;
    Ok(p.demand / p.theta * em1(p.theta * cycle))
}

/// `dQ/dT = D e^{θT}`.
pub fn order_quantity_rate(p: &ModelParams, cycle: f64) -> Result<f64> {
    check_cycle("order_quantity_rate", cycle)?;
    Ok(p.demand * (p.theta * cycle).exp())
}

pub(crate) fn check_cycle(op: &str, cycle: f64) -> Result<()> {
    if cycle > 0.0 && cycle.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{op}: cycle length must be positive, got {cycle}")))
    }
}

/// Ordering of the owned-warehouse threshold `t_a` relative to the credit periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Configuration {
    /// `t_a < N < M`
    Config1,
    /// `N < t_a < M`
    Config2,
    /// Any other ordering, or an empty `(M, t_wstar]` window.
    Other,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Configuration::Config1 => "Config1",
            Configuration::Config2 => "Config2",
            Configuration::Other => "Other",
        };
        f.write_str(s)
    }
}

/// Cost regime of a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    /// `T <= N`, stock within the owned warehouse.
    #[serde(rename = "TC1")]
    Tc1,
    /// `T <= N`, rented warehouse in use.
    #[serde(rename = "TC2")]
    Tc2,
    /// `N < T <= M`, rented warehouse in use.
    #[serde(rename = "TC3")]
    Tc3,
    /// `M < T <= t_wstar`: unsold stock financed after `M`.
    #[serde(rename = "TC4")]
    Tc4,
    /// `T > t_wstar`: funds at `M` fall short of the purchase cost.
    #[serde(rename = "TC5")]
    Tc5,
    /// `N < T <= M`, stock within the owned warehouse.
    #[serde(rename = "TC6")]
    Tc6,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::Tc1 => "TC1",
            CaseId::Tc2 => "TC2",
            CaseId::Tc3 => "TC3",
            CaseId::Tc4 => "TC4",
            CaseId::Tc5 => "TC5",
            CaseId::Tc6 => "TC6",
        };
        f.write_str(s)
    }
}

/// Where a branch's cost evaluator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The corrected closed form with the rented-warehouse term.
    NoteClosedForm,
    /// Closed form assembled from the component accrual rules.
    DerivedClosedForm,
    /// Evaluated only by trajectory integration.
    OracleOnly,
}

/// A left-open, right-closed interval `(lo, hi]` of cycle lengths with one cost regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Branch {
    pub lo: f64,
    /// `f64::INFINITY` for the last branch.
    pub hi: f64,
    pub case: CaseId,
    pub provenance: Provenance,
}

impl Branch {
    pub fn contains(&self, cycle: f64) -> bool {
        self.lo < cycle && cycle <= self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }
}

/// `t_wstar <= M`: the `(M, t_wstar]` branch is empty and has been dropped.
#[derive(Debug, Clone, Copy, PartialEq, Error, Serialize)]
#[error("t_wstar = {t_wstar} does not exceed M = {supplier_credit}; branch (M, t_wstar] dropped")]
pub struct ThresholdOrderError {
    pub t_wstar: f64,
    pub supplier_credit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedQuantities {
    /// Cycle length whose order quantity equals the owned-warehouse capacity.
    pub t_a: f64,
    /// Funds available at `M`: `sDM + sIₑDM²/2`.
    pub w_star: f64,
    /// Cycle length at which the purchase cost `cQ(T)` equals `w_star`.
    pub t_wstar: f64,
    pub configuration: Configuration,
    /// Finite branch boundaries, strictly increasing.
    pub breakpoints: Vec<f64>,
    pub branches: Vec<Branch>,
    pub threshold_error: Option<ThresholdOrderError>,
}

impl DerivedQuantities {
    /// The branch whose interval contains `cycle`.
    pub fn branch_at(&self, cycle: f64) -> Option<&Branch> {
        self.branches.iter().find(|b| b.contains(cycle))
    }

    pub fn branch(&self, case: CaseId) -> Option<&Branch> {
        self.branches.iter().find(|b| b.case == case)
    }
}

/// Computes `t_a`, `w_star`, `t_wstar`, the configuration and the branch partition.
pub fn compute_derived(p: &ModelParams) -> Result<DerivedQuantities> {
    let p = validate_params(*p)?;
    let n = p.customer_credit;
    let m = p.supplier_credit;

    let t_a = (p.theta * p.ow_capacity / p.demand).ln_1p() / p.theta;
    let w_star = p.unit_price * p.demand * m
        + p.unit_price * p.interest_earned_rate * p.demand * m * m / 2.0;
    let t_wstar = purchase_cost_crossing(&p, w_star);

    let threshold_error = (t_wstar <= m).then_some(ThresholdOrderError {
        t_wstar,
        supplier_credit: m,
    });
    let configuration = if threshold_error.is_some() {
        Configuration::Other
    } else if t_a < n {
        Configuration::Config1
    } else if n < t_a && t_a < m {
        Configuration::Config2
    } else {
        Configuration::Other
    };

    let mut breakpoints = vec![t_a, n, m];
    if t_wstar > m {
        breakpoints.push(t_wstar);
    }
    breakpoints.retain(|&b| b > 0.0);
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();

    let mut edges = vec![0.0];
    edges.extend_from_slice(&breakpoints);
    edges.push(f64::INFINITY);
    let branches = edges
        .windows(2)
        .map(|w| {
            // The right end of a bounded branch belongs to it; any point past
            // the last breakpoint identifies the unbounded one.
            let probe = if w[1].is_finite() { w[1] } else { 2.0 * w[0] + 1.0 };
            let case = regime(probe, t_a, n, m, t_wstar);
            Branch {
                lo: w[0],
                hi: w[1],
                case,
                provenance: provenance(configuration, case),
            }
        })
        .collect();

    Ok(DerivedQuantities {
        t_a,
        w_star,
        t_wstar,
        configuration,
        breakpoints,
        branches,
        threshold_error,
    })
}

/// Regime of a cycle length, using the right-closed convention at every threshold.
fn regime(cycle: f64, t_a: f64, n: f64, m: f64, t_wstar: f64) -> CaseId {
    if cycle > m {
        if t_wstar > m && cycle <= t_wstar {
            CaseId::Tc4
        } else {
            CaseId::Tc5
        }
    } else if cycle > n {
        if cycle > t_a {
            CaseId::Tc3
        } else {
            CaseId::Tc6
        }
    } else if cycle > t_a {
        CaseId::Tc2
    } else {
        CaseId::Tc1
    }
}

fn provenance(configuration: Configuration, case: CaseId) -> Provenance {
    match (configuration, case) {
        (Configuration::Other, _) | (_, CaseId::Tc5) => Provenance::OracleOnly,
        (_, CaseId::Tc3) => Provenance::NoteClosedForm,
        _ => Provenance::DerivedClosedForm,
    }
}

/// Bisection for the unique `T` with `c·Q(T) = target`.
fn purchase_cost_crossing(p: &ModelParams, target: f64) -> f64 {
    let cost = |t: f64| p.unit_cost * p.demand / p.theta * em1(p.theta * t);
    // Q(T) >= DT, so the purchase cost at this bound already reaches the target.
    let mut lo = 0.0;
    let mut hi = target / (p.unit_cost * p.demand);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cost(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
