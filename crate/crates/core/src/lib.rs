//! Optimal replenishment cycle for deteriorating items when the retailer
//! receives a credit period `M` from its supplier, grants a shorter period
//! `N` to its customers, and stores overflow above the owned capacity `W`
//! in a more expensive rented warehouse.
//!
//! The annual cost is piecewise in the cycle length `T`. [`model`] derives
//! the thresholds and the branch partition, [`cost`] holds the closed forms,
//! [`oracle`] integrates the same accruals numerically, and [`optimize`]
//! minimizes each convex branch and picks the global optimum.
//!
//! ```
//! use credit_eoq::{solve_global, ModelParams, Variant};
//!
//! let report = solve_global(&ModelParams::ROW3, Variant::Corrected).unwrap();
//! assert!(report.global.t_star > 0.0161 && report.global.t_star <= 0.0165);
//! ```

pub mod cli;
pub mod cost;
pub mod error;
pub mod kernels;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod params;

pub use cost::{CostBreakdown, Variant};
pub use error::{Error, Result};
pub use model::{compute_derived, order_quantity, Branch, CaseId, Configuration, DerivedQuantities, Provenance};
pub use optimize::{minimize_branch, solve_global, solve_model, sweep, CostModel, SolveReport};
pub use oracle::{oracle_total_cost, OracleConfig};
pub use params::{validate_params, ModelParams, ParamName};
