//! Domain types shared by every solver: complex demands, customers,
//! instances and solutions, plus the feasibility predicate and the
//! phase-angle geometry that drives the approximation constants.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CustomerId = u32;

/// Relative slack applied to the capacity in [`Instance::is_feasible`].
pub const FEASIBILITY_REL_TOL: f64 = 1e-9;

/// Apparent power `P + iQ` in volt-amperes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexDemand {
    pub p: f64,
    pub q: f64,
}

impl ComplexDemand {
    pub const ZERO: ComplexDemand = ComplexDemand { p: 0.0, q: 0.0 };

    pub const fn new(p: f64, q: f64) -> Self {
        ComplexDemand { p, q }
    }

    pub fn from_polar(magnitude: f64, phase: f64) -> Self {
        ComplexDemand {
            p: magnitude * phase.cos(),
            q: magnitude * phase.sin(),
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.p.hypot(self.q)
    }

    /// Phase angle in radians. Zero-magnitude demands report 0.
    pub fn phase(&self) -> f64 {
        if self.p == 0.0 && self.q == 0.0 {
            0.0
        } else {
            self.q.atan2(self.p)
        }
    }

    /// True when both components are finite and non-negative.
    pub fn is_first_quadrant(&self) -> bool {
        self.p.is_finite() && self.q.is_finite() && self.p >= 0.0 && self.q >= 0.0
    }
}

impl Add for ComplexDemand {
    type Output = ComplexDemand;
    fn add(self, rhs: Self) -> Self {
        ComplexDemand::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl AddAssign for ComplexDemand {
    fn add_assign(&mut self, rhs: Self) {
        self.p += rhs.p;
        self.q += rhs.q;
    }
}

impl Sub for ComplexDemand {
    type Output = ComplexDemand;
    fn sub(self, rhs: Self) -> Self {
        ComplexDemand::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl std::iter::Sum for ComplexDemand {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ComplexDemand::ZERO, |acc, d| acc + d)
    }
}

impl fmt::Display for ComplexDemand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i VA", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Customer {
    pub id: CustomerId,
    pub demand: ComplexDemand,
    /// What the customer is willing to pay to be supplied.
    pub valuation: f64,
    /// What the customer is paid when curtailed.
    pub compensation: f64,
}

impl Customer {
    pub fn new(id: CustomerId, demand: ComplexDemand, valuation: f64, compensation: f64) -> Self {
        Customer {
            id,
            demand,
            valuation,
            compensation,
        }
    }

    /// Customer whose compensation equals its valuation.
    pub fn symmetric(id: CustomerId, demand: ComplexDemand, value: f64) -> Self {
        Customer::new(id, demand, value, value)
    }

    fn validate(&self) -> Result<()> {
        if !self.demand.is_first_quadrant() {
            return Err(Error::InvalidDemand {
                id: self.id,
                p: self.demand.p,
                q: self.demand.q,
            });
        }
        for (field, value) in [
            ("valuation", self.valuation),
            ("compensation", self.compensation),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidMoney {
                    id: self.id,
                    field,
                    value,
                });
            }
        }
        Ok(())
    }
}

/// Which side of the allocation problem a solution answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Maximise the total valuation of supplied customers.
    Vmax,
    /// Minimise the total compensation paid to curtailed customers.
    Cmin,
}

/// A set of customers sharing one apparent-power capacity.
///
/// Customers are stored in ascending id order, so positional indices
/// double as the id tie-break used by every solver.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    customers: Vec<Customer>,
    capacity: f64,
    tolerance: f64,
}

impl Instance {
    /// Validates and sorts the customers.
    ///
    /// Any customer whose demand alone exceeds the capacity is rejected;
    /// the error lists every offending id.
    pub fn new(mut customers: Vec<Customer>, capacity: f64) -> Result<Self> {
        if !(capacity.is_finite() && capacity > 0.0) {
            return Err(Error::InvalidCapacity(capacity));
        }
        let mut seen = HashSet::with_capacity(customers.len());
        for c in &customers {
            c.validate()?;
            if !seen.insert(c.id) {
                return Err(Error::DuplicateId(c.id));
            }
        }
        customers.sort_by_key(|c| c.id);
        let oversized: Vec<CustomerId> = customers
            .iter()
            .filter(|c| c.demand.magnitude() > capacity)
            .map(|c| c.id)
            .collect();
        if !oversized.is_empty() {
            return Err(Error::DemandExceedsCapacity {
                capacity,
                ids: oversized,
            });
        }
        Ok(Instance {
            customers,
            capacity,
            tolerance: FEASIBILITY_REL_TOL,
        })
    }

    pub fn empty(capacity: f64) -> Result<Self> {
        Instance::new(Vec::new(), capacity)
    }

    /// Same customers under a different capacity.
    pub fn with_capacity(&self, capacity: f64) -> Result<Self> {
        let mut inst = Instance::new(self.customers.clone(), capacity)?;
        inst.tolerance = self.tolerance;
        Ok(inst)
    }

    /// Overrides the relative feasibility tolerance (default 1e-9).
    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be finite and non-negative, got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }

    pub fn len(&self) -> usize {
        self.customers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.customers.is_empty()
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn ids(&self) -> impl Iterator<Item = CustomerId> + '_ {
        self.customers.iter().map(|c| c.id)
    }

    pub fn index_of(&self, id: CustomerId) -> Result<usize> {
        self.customers
            .binary_search_by_key(&id, |c| c.id)
            .map_err(|_| Error::UnknownCustomer(id))
    }

    pub fn customer(&self, id: CustomerId) -> Result<&Customer> {
        self.index_of(id).map(|i| &self.customers[i])
    }

    /// The capacity predicate every solver and the oracle share.
    pub fn fits(&self, aggregate: ComplexDemand) -> bool {
        aggregate.magnitude() <= self.capacity * (1.0 + self.tolerance)
    }

    pub fn is_feasible(&self, ids: &[CustomerId]) -> Result<bool> {
        let mut aggregate = ComplexDemand::ZERO;
        for &id in ids {
            aggregate += self.customer(id)?.demand;
        }
        Ok(self.fits(aggregate))
    }

    /// Largest pairwise phase difference among non-zero demands, in radians.
    pub fn max_phase_spread(&self) -> Result<f64> {
        phase_spread(self.customers.iter().map(|c| c.demand))
    }

    pub fn total_valuation(&self) -> f64 {
        self.customers.iter().fold(0.0, |acc, c| acc + c.valuation)
    }

    pub fn total_compensation(&self) -> f64 {
        self.customers
            .iter()
            .fold(0.0, |acc, c| acc + c.compensation)
    }

    pub fn max_valuation(&self) -> f64 {
        self.customers
            .iter()
            .map(|c| c.valuation)
            .fold(0.0, f64::max)
    }
}

/// Largest pairwise phase difference among non-zero demands.
pub fn phase_spread<I: IntoIterator<Item = ComplexDemand>>(demands: I) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for d in demands {
        if d.magnitude() > 0.0 {
            let phase = d.phase();
            lo = lo.min(phase);
            hi = hi.max(phase);
        }
    }
    if lo.is_finite() {
        Ok(hi - lo)
    } else {
        Err(Error::UndefinedPhaseSpread)
    }
}

/// `sqrt((cos θ + 1) / 2)`, i.e. `cos(θ/2)`: the factor by which phase
/// spread erodes every approximation guarantee.
pub fn half_angle_factor(theta: f64) -> f64 {
    ((theta.cos() + 1.0) / 2.0).sqrt()
}

/// `Σ|d_i| / |Σ d_i|`, bounded above by `1 / half_angle_factor(θ)`.
pub fn magnitude_sum_ratio(demands: &[ComplexDemand]) -> Result<f64> {
    let total: f64 = demands.iter().map(ComplexDemand::magnitude).sum();
    let aggregate = demands.iter().copied().sum::<ComplexDemand>().magnitude();
    if aggregate > 0.0 {
        Ok(total / aggregate)
    } else {
        Err(Error::ZeroAggregate)
    }
}

/// The output of any solver.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Supplied customers, ascending by id.
    pub retained_ids: Vec<CustomerId>,
    /// Total retained valuation (vmax) or total curtailed compensation (cmin).
    pub objective: f64,
    pub aggregate_demand: ComplexDemand,
    pub algorithm: String,
    pub elapsed: Duration,
}

impl Solution {
    /// Builds a solution from positional indices into `instance`. Sums run
    /// in id order, so the same set always yields bit-identical numbers.
    pub fn from_indices(
        instance: &Instance,
        mut retained: Vec<usize>,
        objective: Objective,
        algorithm: impl Into<String>,
    ) -> Self {
        retained.sort_unstable();
        retained.dedup();
        let customers = instance.customers();
        let aggregate_demand = retained.iter().map(|&i| customers[i].demand).sum();
        let objective = match objective {
            Objective::Vmax => retained
                .iter()
                .fold(0.0, |acc, &i| acc + customers[i].valuation),
            Objective::Cmin => {
                let mut kept = retained.iter().peekable();
                let mut curtailed = 0.0;
                for (i, c) in customers.iter().enumerate() {
                    if kept.peek() == Some(&&i) {
                        kept.next();
                    } else {
                        curtailed += c.compensation;
                    }
                }
                curtailed
            }
        };
        Solution {
            retained_ids: retained.iter().map(|&i| customers[i].id).collect(),
            objective,
            aggregate_demand,
            algorithm: algorithm.into(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    pub fn with_algorithm(mut self, algorithm: impl Into<String>) -> Self {
        self.algorithm = algorithm.into();
        self
    }

    /// Customers not retained, ascending by id.
    pub fn curtailed_ids(&self, instance: &Instance) -> Vec<CustomerId> {
        instance
            .ids()
            .filter(|id| self.retained_ids.binary_search(id).is_err())
            .collect()
    }

    /// Same retained set and objective; ignores tag and timing.
    pub fn same_outcome(&self, other: &Solution) -> bool {
        self.retained_ids == other.retained_ids && self.objective == other.objective
    }
}
