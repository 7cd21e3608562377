use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exogenous constants of the inventory model. Times are in years, rates are
/// fractions per year and money is in a common currency unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Deterioration rate θ.
    pub theta: f64,
    /// Demand rate D, units per year.
    pub demand: f64,
    /// Fixed cost per order A.
    pub order_cost: f64,
    /// Purchase cost per unit c.
    pub unit_cost: f64,
    /// Selling price per unit s.
    pub unit_price: f64,
    /// Rented-warehouse holding cost k, per unit per year.
    pub hold_rw: f64,
    /// Owned-warehouse holding cost h, per unit per year.
    pub hold_ow: f64,
    /// Rate Iₑ at which interest accrues on sales revenue.
    pub interest_earned_rate: f64,
    /// Rate Iₚ at which interest is charged on unpaid purchase cost.
    pub interest_charged_rate: f64,
    /// Delay N granted by the retailer to its customers.
    pub customer_credit: f64,
    /// Delay M granted by the supplier to the retailer.
    pub supplier_credit: f64,
    /// Owned-warehouse capacity W, units.
    pub ow_capacity: f64,
}

impl ModelParams {
    /// The reference scenario: 9 million units a year through a 144 900 unit owned warehouse.
    pub const ROW3: ModelParams = ModelParams {
        theta: 0.00001,
        demand: 9_000_000.0,
        order_cost: 1224.04585,
        unit_cost: 1.9999,
        unit_price: 2.0,
        hold_rw: 1.1,
        hold_ow: 1.0,
        interest_earned_rate: 0.000005,
        interest_charged_rate: 0.15,
        customer_credit: 0.0161,
        supplier_credit: 0.0165,
        ow_capacity: 144_900.0,
    };

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::Theta => self.theta,
            ParamName::Demand => self.demand,
            ParamName::OrderCost => self.order_cost,
            ParamName::UnitCost => self.unit_cost,
            ParamName::UnitPrice => self.unit_price,
            ParamName::HoldRw => self.hold_rw,
            ParamName::HoldOw => self.hold_ow,
            ParamName::InterestEarnedRate => self.interest_earned_rate,
            ParamName::InterestChargedRate => self.interest_charged_rate,
            ParamName::CustomerCredit => self.customer_credit,
            ParamName::SupplierCredit => self.supplier_credit,
            ParamName::OwCapacity => self.ow_capacity,
        }
    }

    /// Returns a copy with one field replaced.
    pub fn with(mut self, name: ParamName, value: f64) -> Self {
        let slot = match name {
            ParamName::Theta => &mut self.theta,
            ParamName::Demand => &mut self.demand,
            ParamName::OrderCost => &mut self.order_cost,
            ParamName::UnitCost => &mut self.unit_cost,
            ParamName::UnitPrice => &mut self.unit_price,
            ParamName::HoldRw => &mut self.hold_rw,
            ParamName::HoldOw => &mut self.hold_ow,
            ParamName::InterestEarnedRate => &mut self.interest_earned_rate,
            ParamName::InterestChargedRate => &mut self.interest_charged_rate,
            ParamName::CustomerCredit => &mut self.customer_credit,
            ParamName::SupplierCredit => &mut self.supplier_credit,
            ParamName::OwCapacity => &mut self.ow_capacity,
        };
        *slot = value;
        self
    }
}

/// Checks every parameter invariant and returns the parameters unchanged.
///
/// The error message names the first violated condition.
pub fn validate_params(raw: ModelParams) -> Result<ModelParams> {
    let p = &raw;
    for name in ParamName::ALL {
        if !p.get(name).is_finite() {
            return fail(format!("{name} must be finite"));
        }
    }
    if p.theta <= 0.0 {
        return fail("theta must be positive");
    }
    if p.demand <= 0.0 {
        return fail("demand must be positive");
    }
    if p.order_cost <= 0.0 {
        return fail("order_cost must be positive");
    }
    if p.unit_cost <= 0.0 {
        return fail("unit_cost must be positive");
    }
    if p.unit_price < p.unit_cost {
        return fail("unit_price must not be below unit_cost");
    }
    if p.hold_ow < 0.0 {
        return fail("hold_ow must be non-negative");
    }
    if p.hold_rw <= p.hold_ow {
        return fail("k must exceed h (hold_rw > hold_ow)");
    }
    if p.customer_credit < 0.0 {
        return fail("N must be non-negative");
    }
    if p.supplier_credit <= p.customer_credit {
        return fail("M must exceed N");
    }
    // Iₑ = 0 is accepted so that interest can be switched off entirely.
    if !(0.0..1.0).contains(&p.interest_earned_rate) {
        return fail("interest_earned_rate must lie in [0, 1)");
    }
    if p.interest_charged_rate < 0.0 {
        return fail("interest_charged_rate must be non-negative");
    }
    if p.ow_capacity <= 0.0 {
        return fail("ow_capacity must be positive");
    }
    Ok(raw)
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParams(msg.into()))
}

/// Names of the [`ModelParams`] fields, used by sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamName {
    Theta,
    Demand,
    OrderCost,
    UnitCost,
    UnitPrice,
    HoldRw,
    HoldOw,
    InterestEarnedRate,
    InterestChargedRate,
    CustomerCredit,
    SupplierCredit,
    OwCapacity,
}

impl ParamName {
    pub const ALL: [ParamName; 12] = [
        ParamName::Theta,
        ParamName::Demand,
        ParamName::OrderCost,
        ParamName::UnitCost,
        ParamName::UnitPrice,
        ParamName::HoldRw,
        ParamName::HoldOw,
        ParamName::InterestEarnedRate,
        ParamName::InterestChargedRate,
        ParamName::CustomerCredit,
        ParamName::SupplierCredit,
        ParamName::OwCapacity,
    ];

    pub fn field_name(self) -> &'static str {
        match self {
            ParamName::Theta => "theta",
            ParamName::Demand => "demand",
            ParamName::OrderCost => "order_cost",
            ParamName::UnitCost => "unit_cost",
            ParamName::UnitPrice => "unit_price",
            ParamName::HoldRw => "hold_rw",
            ParamName::HoldOw => "hold_ow",
            ParamName::InterestEarnedRate => "interest_earned_rate",
            ParamName::InterestChargedRate => "interest_charged_rate",
            ParamName::CustomerCredit => "customer_credit",
            ParamName::SupplierCredit => "supplier_credit",
            ParamName::OwCapacity => "ow_capacity",
        }
    }

    /// Conventional single-letter symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            ParamName::Theta => "θ",
            ParamName::Demand => "D",
            ParamName::OrderCost => "A",
            ParamName::UnitCost => "c",
            ParamName::UnitPrice => "s",
            ParamName::HoldRw => "k",
            ParamName::HoldOw => "h",
            ParamName::InterestEarnedRate => "Ie",
            ParamName::InterestChargedRate => "Ip",
            ParamName::CustomerCredit => "N",
            ParamName::SupplierCredit => "M",
            ParamName::OwCapacity => "W",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.field_name())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    /// Accepts either the field name or the symbol (`theta`, `D`, `Ie`, `M`, ...).
    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "θ" => Some(ParamName::Theta),
            "Iₑ" => Some(ParamName::InterestEarnedRate),
            "Iₚ" => Some(ParamName::InterestChargedRate),
            _ => None,
        };
        alias
            .or_else(|| {
                ParamName::ALL
                    .into_iter()
                    .find(|n| n.field_name() == s || n.symbol() == s)
            })
            .ok_or_else(|| Error::InvalidParams(format!("unknown parameter '{s}'")))
    }
}
