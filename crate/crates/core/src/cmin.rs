//! Reverse-greedy heuristics for compensation minimisation.
//!
//! Each starts with everyone supplied and curtails customers one at a
//! time in a fixed order, stopping at the first retained set that fits.

use std::cmp::Ordering;
use std::time::Instant;

use crate::greedy::efficiency;
use crate::model::{ComplexDemand, Customer, Instance, Objective, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RemovalOrder {
    /// Cheapest compensation curtailed first.
    CompensationAsc,
    /// Largest demand curtailed first.
    MagnitudeDesc,
    /// Lowest compensation per volt-ampere curtailed first.
    EfficiencyAsc,
}

impl RemovalOrder {
    pub fn tag(self) -> &'static str {
        match self {
            RemovalOrder::CompensationAsc => "cmin_gva",
            RemovalOrder::MagnitudeDesc => "cmin_gma",
            RemovalOrder::EfficiencyAsc => "cmin_gra",
        }
    }

    fn compare(self, a: &Customer, b: &Customer) -> Ordering {
        match self {
            RemovalOrder::CompensationAsc => a.compensation.total_cmp(&b.compensation),
            RemovalOrder::MagnitudeDesc => b.demand.magnitude().total_cmp(&a.demand.magnitude()),
            RemovalOrder::EfficiencyAsc => {
                efficiency(a.compensation, a).total_cmp(&efficiency(b.compensation, b))
            }
        }
    }
}

/// Curtailment order (positional indices), ties by ascending id.
pub fn removal_sequence(instance: &Instance, order: RemovalOrder) -> Vec<usize> {
    let customers = instance.customers();
    let mut seq: Vec<usize> = (0..customers.len()).collect();
    seq.sort_by(|&a, &b| order.compare(&customers[a], &customers[b]));
    seq
}

/// Number of leading customers of `seq` that must be curtailed before the
/// rest fits.
///
/// Suffix aggregates are accumulated from the back, so every candidate
/// retained set is summed directly rather than by repeated subtraction.
pub(crate) fn shortest_feasible_prefix(instance: &Instance, seq: &[usize]) -> usize {
    let customers = instance.customers();
    let mut suffix = vec![ComplexDemand::ZERO; seq.len() + 1];
    for r in (0..seq.len()).rev() {
        suffix[r] = suffix[r + 1] + customers[seq[r]].demand;
    }
    (0..=seq.len())
        .find(|&r| instance.fits(suffix[r]))
        .unwrap_or(seq.len())
}

pub fn reverse_greedy(instance: &Instance, order: RemovalOrder) -> Solution {
    let started = Instant::now();
    let seq = removal_sequence(instance, order);
    let cut = shortest_feasible_prefix(instance, &seq);
    Solution::from_indices(instance, seq[cut..].to_vec(), Objective::Cmin, order.tag())
        .with_elapsed(started.elapsed())
}

pub fn cmin_gva(instance: &Instance) -> Solution {
    reverse_greedy(instance, RemovalOrder::CompensationAsc)
}

pub fn cmin_gma(instance: &Instance) -> Solution {
    reverse_greedy(instance, RemovalOrder::MagnitudeDesc)
}

pub fn cmin_gra(instance: &Instance) -> Solution {
    reverse_greedy(instance, RemovalOrder::EfficiencyAsc)
}

/// The cheaper of [`cmin_gva`] and [`cmin_gra`]; the GRA variant wins ties.
pub fn cmin_gda(instance: &Instance) -> Solution {
    let started = Instant::now();
    let by_ratio = cmin_gra(instance);
    let by_value = cmin_gva(instance);
    let best = if by_value.objective < by_ratio.objective {
        by_value
    } else {
        by_ratio
    };
    best.with_algorithm("cmin_gda")
        .with_elapsed(started.elapsed())
}
