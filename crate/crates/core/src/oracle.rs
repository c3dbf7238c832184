//! Exact optima by exhaustive enumeration, and the fractional relaxation
//! bound. These are the yardsticks every approximation guarantee is
//! measured against.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::{sorted_indices, SortKey, TieBreak};
use crate::model::{ComplexDemand, Instance, Objective, Solution};

/// Hard ceiling on the oracle's instance size (2³⁰ subsets).
pub const ORACLE_HARD_MAX_N: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_subsets: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 20,
            max_subsets: 1 << 20,
        }
    }
}

impl OracleBudget {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > ORACLE_HARD_MAX_N {
            return Err(Error::InvalidConfig(format!(
                "oracle budget max_n = {max_n} exceeds the hard ceiling {ORACLE_HARD_MAX_N}"
            )));
        }
        Ok(OracleBudget {
            max_n,
            max_subsets: 1u64 << max_n,
        })
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let subsets = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
        if n > self.max_n || n > ORACLE_HARD_MAX_N || subsets > self.max_subsets {
            Err(Error::OracleBudget {
                n,
                max_n: self.max_n,
                max_subsets: self.max_subsets,
            })
        } else {
            Ok(())
        }
    }
}

/// True when the id set encoded by `a` sorts before `b` lexicographically
/// (bit `i` stands for the `i`-th smallest id).
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let first = diff.trailing_zeros();
    let above = |mask: u32| first < 31 && (mask >> (first + 1)) != 0;
    if a & (1 << first) != 0 {
        above(b)
    } else {
        !above(a)
    }
}

struct Search<'a> {
    instance: &'a Instance,
    weights: Vec<f64>,
    best_value: f64,
    best_mask: u32,
}

impl Search<'_> {
    /// Depth-first include/exclude over indices in id order. Sums are
    /// built left to right, so each leaf carries exactly the numbers
    /// [`Solution::from_indices`] would compute for that set. Infeasible
    /// prefixes are cut: first-quadrant demands only grow the aggregate.
    fn visit(&mut self, i: usize, aggregate: ComplexDemand, value: f64, mask: u32) {
        if i == self.weights.len() {
            if value > self.best_value
                || (value == self.best_value && lex_less(mask, self.best_mask))
            {
                self.best_value = value;
                self.best_mask = mask;
            }
            return;
        }
        let with = aggregate + self.instance.customers()[i].demand;
        if self.instance.fits(with) {
            self.visit(i + 1, with, value + self.weights[i], mask | (1 << i));
        }
        self.visit(i + 1, aggregate, value, mask);
    }
}

/// Feasible retained set maximising `Σ weight`, ties to the
/// lexicographically smallest id set.
fn best_subset(instance: &Instance, weights: Vec<f64>) -> Vec<usize> {
    let mut search = Search {
        instance,
        weights,
        best_value: f64::NEG_INFINITY,
        best_mask: 0,
    };
    search.visit(0, ComplexDemand::ZERO, 0.0, 0);
    (0..instance.len())
        .filter(|&i| search.best_mask & (1 << i) != 0)
        .collect()
}

/// Exact valuation-maximising allocation.
pub fn brute_force_vmax(instance: &Instance, budget: OracleBudget) -> Result<Solution> {
    budget.check(instance.len())?;
    let started = Instant::now();
    let weights = instance.customers().iter().map(|c| c.valuation).collect();
    let retained = best_subset(instance, weights);
    Ok(
        Solution::from_indices(instance, retained, Objective::Vmax, "oracle")
            .with_elapsed(started.elapsed()),
    )
}

/// Exact compensation-minimising allocation: the feasible retained set
/// whose complement carries the least compensation.
pub fn brute_force_cmin(instance: &Instance, budget: OracleBudget) -> Result<Solution> {
    budget.check(instance.len())?;
    let started = Instant::now();
    let weights = instance
        .customers()
        .iter()
        .map(|c| c.compensation)
        .collect();
    let retained = best_subset(instance, weights);
    Ok(
        Solution::from_indices(instance, retained, Objective::Cmin, "oracle")
            .with_elapsed(started.elapsed()),
    )
}

/// Optimum of the fractional relaxation where each demand is replaced by
/// its magnitude: fill by efficiency, then take the break item
/// fractionally.
pub fn lp_upper_bound(instance: &Instance) -> f64 {
    let customers = instance.customers();
    let mut remaining = instance.capacity();
    let mut value = 0.0;
    for i in sorted_indices(instance, SortKey::EfficiencyDesc, TieBreak::ById) {
        let c = &customers[i];
        let magnitude = c.demand.magnitude();
        if magnitude <= remaining {
            value += c.valuation;
            remaining -= magnitude;
        } else {
            value += remaining * c.valuation / magnitude;
            break;
        }
    }
    value
}
