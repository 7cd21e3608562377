//! Branch-wise minimization of the piecewise annual cost.
//!
//! Every closed-form branch is convex in `T`, so its minimum over `(lo, hi]`
//! is either an endpoint or the root of the slope, found by bisection.
//! Branches that only the oracle can evaluate are minimized by golden-section
//! search on the value.

use serde::Serialize;
use thiserror::Error;

use crate::cost::{closed_form_breakdown, tc3_derivatives_with, tc3_formula, Variant};
use crate::error::{Error, Result};
use crate::model::{compute_derived, order_quantity, Branch, CaseId, Configuration, DerivedQuantities, Provenance};
use crate::oracle::{numeric_derivative, oracle_total_cost, OracleConfig, DEFAULT_REL_STEP};
use crate::params::{ModelParams, ParamName};

/// Smallest cycle length ever evaluated; every cost diverges as `A/T` below it.
pub const CYCLE_FLOOR: f64 = 1e-9;

const BISECTION_WIDTH: f64 = 1e-12;
const TIE_TOLERANCE: f64 = 1e-12;
const CONVEXITY_SAMPLES: usize = 17;

/// Oracle settings used when a branch has no closed form.
pub const SOLVER_ORACLE: OracleConfig = OracleConfig {
    rel_tol: 1e-12,
    max_depth: 50,
    extended_precision: false,
};

/// Sampled second differences of a branch cost were negative.
#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[error("{case} is not convex on the sampled grid (second difference {worst:e} at T = {at})")]
pub struct NonConvexWarning {
    pub case: CaseId,
    pub at: f64,
    pub worst: f64,
}

/// Annual cost of one parameter set, dispatching each `T` to its branch evaluator.
#[derive(Debug, Clone)]
pub struct CostModel {
    pub params: ModelParams,
    pub derived: DerivedQuantities,
    pub variant: Variant,
    pub oracle: OracleConfig,
}

impl CostModel {
    pub fn new(params: &ModelParams, variant: Variant) -> Result<Self> {
        Ok(Self {
            params: *params,
            derived: compute_derived(params)?,
            variant,
            oracle: SOLVER_ORACLE,
        })
    }

    /// Cost at `T`, evaluated by the branch that owns `T`.
    pub fn cost(&self, cycle: f64) -> Result<f64> {
        let branch = self
            .derived
            .branch_at(cycle)
            .ok_or_else(|| Error::Domain(format!("no branch contains T = {cycle}")))?;
        self.branch_cost(branch, cycle)
    }

    /// Cost of `branch`'s evaluator at `T`. Closed forms are continued past
    /// the interval; the oracle always follows the true regime of `T`.
    pub fn branch_cost(&self, branch: &Branch, cycle: f64) -> Result<f64> {
        let (p, d) = (&self.params, &self.derived);
        match (branch.provenance, branch.case) {
            (Provenance::OracleOnly, _) => Ok(oracle_total_cost(p, cycle, &self.oracle)?.total()),
            (_, CaseId::Tc3) => {
                crate::model::check_cycle("branch_cost", cycle)?;
                Ok(tc3_formula(p, d, cycle, self.variant))
            }
            (_, case) => Ok(closed_form_breakdown(p, d, case, cycle, self.variant)?.total()),
        }
    }

    /// Slope of `branch`'s evaluator at `T`: analytic for TC₃, central
    /// differences for the other closed forms, and a difference kept inside
    /// the branch for oracle-only branches.
    pub fn branch_slope(&self, branch: &Branch, cycle: f64) -> Result<f64> {
        match (branch.provenance, branch.case) {
            (Provenance::OracleOnly, _) => {
                let step = 1e-6 * cycle.min(branch.hi - branch.lo);
                let lo = (cycle - step).max(branch.lo + 0.5 * (cycle - branch.lo));
                let hi = (cycle + step).min(branch.hi);
                let (lo, hi) = if hi > lo { (lo, hi) } else { (cycle - step, cycle) };
                Ok((self.branch_cost(branch, hi)? - self.branch_cost(branch, lo)?) / (hi - lo))
            }
            (_, CaseId::Tc3) => {
                Ok(tc3_derivatives_with(&self.params, &self.derived, cycle, self.variant)?.0)
            }
            _ => {
                let f = |t: f64| self.branch_cost(branch, t).unwrap_or(f64::NAN);
                let slope = numeric_derivative(f, cycle, DEFAULT_REL_STEP, &[])?;
                if slope.is_finite() {
                    Ok(slope)
                } else {
                    Err(Error::Domain(format!("slope of {} undefined at T = {cycle}", branch.case)))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    LeftEndpoint,
    RightEndpoint,
    SlopeBisection,
    GoldenSection,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchMinimum {
    pub minimizer: f64,
    pub value: f64,
    pub method: SearchMethod,
    pub warning: Option<NonConvexWarning>,
}

/// First point evaluated inside the open left end of a branch.
fn left_probe(branch: &Branch) -> f64 {
    if branch.lo <= 0.0 {
        CYCLE_FLOOR.min(0.5 * branch.hi)
    } else if branch.is_bounded() {
        (branch.lo + 1e-12 * (branch.hi - branch.lo)).max(branch.lo.next_up())
    } else {
        branch.lo * (1.0 + 1e-12)
    }
}

/// Minimizes one branch of `model` over its interval.
pub fn minimize_branch(model: &CostModel, branch: &Branch) -> Result<BranchMinimum> {
    if !(branch.hi > branch.lo) {
        return Err(Error::Domain(format!("{} has an empty interval", branch.case)));
    }
    let lo = left_probe(branch);
    if branch.provenance == Provenance::OracleOnly {
        return golden_minimum(model, branch, lo, None);
    }

    let hi = if branch.is_bounded() {
        branch.hi
    } else {
        let mut hi = 2.0 * lo.max(1e-3);
        let mut guard = 0;
        while model.branch_slope(branch, hi)? <= 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::Domain(format!("{} decreases without bound", branch.case)));
            }
        }
        hi
    };

    if let Some(warning) = convexity_breach(model, branch, lo, hi)? {
        return golden_minimum(model, branch, lo, Some(warning));
    }

    let slope_lo = model.branch_slope(branch, lo)?;
    if slope_lo >= 0.0 {
        return finish(model, branch, lo, SearchMethod::LeftEndpoint);
    }
    if branch.is_bounded() && model.branch_slope(branch, hi)? <= 0.0 {
        return finish(model, branch, hi, SearchMethod::RightEndpoint);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..400 {
        if b - a <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if model.branch_slope(branch, mid)? < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    finish(model, branch, 0.5 * (a + b), SearchMethod::SlopeBisection)
}

fn finish(model: &CostModel, branch: &Branch, at: f64, method: SearchMethod) -> Result<BranchMinimum> {
    Ok(BranchMinimum {
        minimizer: at,
        value: model.branch_cost(branch, at)?,
        method,
        warning: None,
    })
}

/// Looks for negative second differences on an even grid over `[lo, hi]`.
fn convexity_breach(
    model: &CostModel,
    branch: &Branch,
    lo: f64,
    hi: f64,
) -> Result<Option<NonConvexWarning>> {
    let n = CONVEXITY_SAMPLES;
    let ts: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let fs = ts
        .iter()
        .map(|&t| model.branch_cost(branch, t))
        .collect::<Result<Vec<_>>>()?;
    let scale = fs.iter().fold(0.0f64, |m, f| m.max(f.abs()));
    let mut worst: Option<(f64, f64)> = None;
    for i in 1..n - 1 {
        let second = fs[i - 1] - 2.0 * fs[i] + fs[i + 1];
        if second < -1e-9 * scale && worst.is_none_or(|(w, _)| second < w) {
            worst = Some((second, ts[i]));
        }
    }
    Ok(worst.map(|(worst, at)| NonConvexWarning {
        case: branch.case,
        at,
        worst,
    }))
}

/// Golden-section search on the value, bracketing by doubling when the branch is unbounded.
fn golden_minimum(
    model: &CostModel,
    branch: &Branch,
    lo: f64,
    warning: Option<NonConvexWarning>,
) -> Result<BranchMinimum> {
    let f = |t: f64| model.branch_cost(branch, t);
    let (mut a, mut b) = if branch.is_bounded() {
        (lo, branch.hi)
    } else {
        let width = if branch.lo > 0.0 { branch.lo } else { 1.0 };
        let (mut a, mut mid) = (lo, branch.lo + width);
        let mut f_mid = f(mid)?;
        let mut f_a = f(a)?;
        let mut guard = 0;
        loop {
            if f_mid >= f_a {
                break (a, mid);
            }
            let next = branch.lo + 2.0 * (mid - branch.lo);
            let f_next = f(next)?;
            if f_next >= f_mid {
                break (a, next);
            }
            (a, f_a, mid, f_mid) = (mid, f_mid, next, f_next);
            guard += 1;
            if guard > 200 {
                return Err(Error::Domain(format!("{} decreases without bound", branch.case)));
            }
        }
    };
    let ends = [a, b];

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..300 {
        if b - a <= 1e-14 * b.abs() {
            break;
        }
        if fc <= fd {
            (b, d, fd) = (d, c, fc);
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            (a, c, fc) = (c, d, fd);
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for t in ends {
        let v = f(t)?;
        if v < best.1 {
            best = (t, v);
        }
    }
    Ok(BranchMinimum {
        minimizer: best.0,
        value: best.1,
        method: SearchMethod::GoldenSection,
        warning,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub case: CaseId,
    pub lo: f64,
    /// `None` for the unbounded last branch.
    pub hi: Option<f64>,
    pub provenance: Provenance,
    /// Evaluated under the partial-payment assumption (TC₅).
    pub assumption_based: bool,
    pub minimizer: f64,
    pub min_value: f64,
    pub method: SearchMethod,
    pub slope_sign_left: i8,
    pub slope_sign_right: Option<i8>,
    /// `(θ·hi)²` times the branch slope at its right end.
    pub delta: Option<f64>,
    pub warning: Option<NonConvexWarning>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalOptimum {
    pub case: CaseId,
    pub t_star: f64,
    pub q_star: f64,
    pub tvc: f64,
    /// Another branch reached the same minimum within 1e-12 relative; the shorter cycle won.
    pub tie_broken: bool,
}

/// Closed-form (or branch evaluator) cost against the oracle at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub t: f64,
    pub case: CaseId,
    pub evaluator: f64,
    pub oracle: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tc3Unconstrained {
    pub minimizer: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub variant: Variant,
    pub configuration: Configuration,
    pub derived: DerivedQuantities,
    pub branches: Vec<BranchReport>,
    pub global: GlobalOptimum,
    /// Minimizer of the TC₃ formula over all `T > 0`, ignoring its interval.
    pub tc3_unconstrained: Option<Tc3Unconstrained>,
    pub oracle_residuals: Vec<Residual>,
    pub assumption_based: bool,
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Minimizes every branch and picks the global optimum.
pub fn solve_global(p: &ModelParams, variant: Variant) -> Result<SolveReport> {
    let model = CostModel::new(p, variant)?;
    solve_model(&model)
}

pub fn solve_model(model: &CostModel) -> Result<SolveReport> {
    let (p, d) = (&model.params, &model.derived);
    let mut branches = Vec::with_capacity(d.branches.len());
    for branch in &d.branches {
        let min = minimize_branch(model, branch)?;
        let slope_left = model.branch_slope(branch, left_probe(branch))?;
        let slope_right = if branch.is_bounded() {
            Some(model.branch_slope(branch, branch.hi)?)
        } else {
            None
        };
        branches.push(BranchReport {
            case: branch.case,
            lo: branch.lo,
            hi: branch.is_bounded().then_some(branch.hi),
            provenance: branch.provenance,
            assumption_based: branch.case == CaseId::Tc5,
            minimizer: min.minimizer,
            min_value: min.value,
            method: min.method,
            slope_sign_left: sign(slope_left),
            slope_sign_right: slope_right.map(sign),
            delta: slope_right.map(|s| (p.theta * branch.hi).powi(2) * s),
            warning: min.warning,
        });
    }

    let mut best = 0;
    let mut tie_broken = false;
    for (i, b) in branches.iter().enumerate().skip(1) {
        let incumbent = branches[best].min_value;
        let tol = TIE_TOLERANCE * incumbent.abs().max(b.min_value.abs());
        if b.min_value < incumbent - tol {
            best = i;
            tie_broken = false;
        } else if (b.min_value - incumbent).abs() <= tol {
            tie_broken = true;
        }
    }
    let winner = &branches[best];
    let global = GlobalOptimum {
        case: winner.case,
        t_star: winner.minimizer,
        q_star: order_quantity(p, winner.minimizer)?,
        tvc: winner.min_value,
        tie_broken,
    };

    let mut probes = vec![(global.t_star, global.case)];
    for &b in &d.breakpoints {
        if let Some(branch) = d.branch_at(b) {
            probes.push((b, branch.case));
        }
    }
    let oracle_cfg = OracleConfig::default();
    let oracle_residuals = probes
        .into_iter()
        .map(|(t, case)| {
            let evaluator = model.cost(t)?;
            let oracle = oracle_total_cost(p, t, &oracle_cfg)?.total();
            Ok(Residual {
                t,
                case,
                evaluator,
                oracle,
                rel_error: ((evaluator - oracle) / oracle).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SolveReport {
        variant: model.variant,
        configuration: d.configuration,
        derived: d.clone(),
        assumption_based: global.case == CaseId::Tc5,
        branches,
        global,
        tc3_unconstrained: tc3_unconstrained(model),
        oracle_residuals,
    })
}

/// Minimizes the TC₃ formula over `T > 0` by bisection on its analytic slope.
pub fn tc3_unconstrained(model: &CostModel) -> Option<Tc3Unconstrained> {
    let (p, d, v) = (&model.params, &model.derived, model.variant);
    let slope = |t: f64| tc3_derivatives_with(p, d, t, v).map(|s| s.0).ok();
    let mut a = CYCLE_FLOOR;
    if slope(a)? >= 0.0 {
        return Some(Tc3Unconstrained {
            minimizer: a,
            value: tc3_formula(p, d, a, v),
        });
    }
    let mut b = p.supplier_credit;
    let mut guard = 0;
    while slope(b)? <= 0.0 {
        a = b;
        b *= 2.0;
        guard += 1;
        if guard > 200 {
            return None;
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (a + b);
        if b - a <= BISECTION_WIDTH || mid <= a || mid >= b {
            break;
        }
        if slope(mid)? < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let t = 0.5 * (a + b);
    Some(Tc3Unconstrained {
        minimizer: t,
        value: tc3_formula(p, d, t, v),
    })
}

/// One sweep row: the substituted value and its solve outcome.
#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: Result<SolveReport>,
}

/// Solves `p` with `param` replaced by each of `values`, in input order.
/// Invalid rows are reported in place and do not stop the sweep.
pub fn sweep(p: &ModelParams, param: ParamName, values: &[f64], variant: Variant) -> Vec<SweepRow> {
    values
        .iter()
        .map(|&value| SweepRow {
            value,
            outcome: solve_global(&p.with(param, value), variant),
        })
        .collect()
}
