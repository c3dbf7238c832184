//! Single-pass greedy heuristics for valuation maximisation.
//!
//! Each heuristic sorts the customers by one key and then admits them in
//! that order whenever the running aggregate demand still fits. GDA runs
//! the valuation and efficiency scans and keeps the better one, which
//! guarantees at least `½·cos(θ/2)` of the optimum where `θ` is the phase
//! spread of the demands.

use std::cmp::Ordering;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ComplexDemand, Customer, CustomerId, Instance, Objective, Solution};

/// Scan order used by a greedy heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SortKey {
    /// Highest valuation first (GVA).
    ValuationDesc,
    /// Smallest demand magnitude first (GMA).
    MagnitudeAsc,
    /// Highest valuation per volt-ampere first (GRA). Zero-magnitude
    /// demands rank as infinitely efficient.
    EfficiencyDesc,
}

impl SortKey {
    pub fn tag(self) -> &'static str {
        match self {
            SortKey::ValuationDesc => "gva",
            SortKey::MagnitudeAsc => "gma",
            SortKey::EfficiencyDesc => "gra",
        }
    }

    fn compare(self, a: &Customer, b: &Customer) -> Ordering {
        match self {
            SortKey::ValuationDesc => b.valuation.total_cmp(&a.valuation),
            SortKey::MagnitudeAsc => a.demand.magnitude().total_cmp(&b.demand.magnitude()),
            SortKey::EfficiencyDesc => {
                efficiency(b.valuation, b).total_cmp(&efficiency(a.valuation, a))
            }
        }
    }
}

/// `value / |d|`, with zero-magnitude demands mapped to `+∞`.
pub(crate) fn efficiency(value: f64, customer: &Customer) -> f64 {
    let magnitude = customer.demand.magnitude();
    if magnitude == 0.0 {
        f64::INFINITY
    } else {
        value / magnitude
    }
}

/// How equal sort keys are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    /// Ascending customer id.
    #[default]
    ById,
    /// A seeded random permutation, for experiments that want the
    /// "equivalent candidates are selected randomly" reading.
    Seeded(u64),
}

/// Positional indices of `instance` sorted by `key`, ties resolved by `tie`.
pub fn sorted_indices(instance: &Instance, key: SortKey, tie: TieBreak) -> Vec<usize> {
    let customers = instance.customers();
    let mut order: Vec<usize> = (0..customers.len()).collect();
    match tie {
        // stable sort over id-ordered indices
        TieBreak::ById => order.sort_by(|&a, &b| key.compare(&customers[a], &customers[b])),
        TieBreak::Seeded(seed) => {
            let mut rank: Vec<usize> = (0..customers.len()).collect();
            rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order.sort_by(|&a, &b| {
                key.compare(&customers[a], &customers[b])
                    .then(rank[a].cmp(&rank[b]))
            });
        }
    }
    order
}

/// Admits customers from `order` whose addition keeps the aggregate
/// feasible. Returns the aggregate after the scan.
pub(crate) fn scan<I>(
    instance: &Instance,
    order: I,
    start: ComplexDemand,
    retained: &mut Vec<usize>,
) -> ComplexDemand
where
    I: IntoIterator<Item = usize>,
{
    let customers = instance.customers();
    let mut aggregate = start;
    for i in order {
        let candidate = aggregate + customers[i].demand;
        if instance.fits(candidate) {
            aggregate = candidate;
            retained.push(i);
        }
    }
    aggregate
}

/// Runs one greedy heuristic with an explicit tie-break.
pub fn greedy(instance: &Instance, key: SortKey, tie: TieBreak) -> Solution {
    let started = Instant::now();
    let order = sorted_indices(instance, key, tie);
    let mut retained = Vec::new();
    scan(instance, order, ComplexDemand::ZERO, &mut retained);
    Solution::from_indices(instance, retained, Objective::Vmax, key.tag())
        .with_elapsed(started.elapsed())
}

/// Greedy Valuation Algorithm.
pub fn gva(instance: &Instance) -> Solution {
    greedy(instance, SortKey::ValuationDesc, TieBreak::ById)
}

/// Greedy Magnitude Algorithm.
pub fn gma(instance: &Instance) -> Solution {
    greedy(instance, SortKey::MagnitudeAsc, TieBreak::ById)
}

/// Greedy Ratio Algorithm.
pub fn gra(instance: &Instance) -> Solution {
    greedy(instance, SortKey::EfficiencyDesc, TieBreak::ById)
}

/// Greedy Duet Algorithm: the better of GRA and GVA. Exact ties return
/// the GRA set.
pub fn gda(instance: &Instance) -> Solution {
    gda_with(instance, TieBreak::ById)
}

pub fn gda_with(instance: &Instance, tie: TieBreak) -> Solution {
    let started = Instant::now();
    let by_ratio = greedy(instance, SortKey::EfficiencyDesc, tie);
    let by_value = greedy(instance, SortKey::ValuationDesc, tie);
    better_of(by_ratio, by_value)
        .with_algorithm("gda")
        .with_elapsed(started.elapsed())
}

fn better_of(ratio_branch: Solution, value_branch: Solution) -> Solution {
    if value_branch.objective > ratio_branch.objective {
        value_branch
    } else {
        ratio_branch
    }
}

/// Both GDA scan orders, computed once and reused across many forced runs.
#[derive(Debug, Clone)]
pub(crate) struct DuetOrders {
    by_efficiency: Vec<usize>,
    by_valuation: Vec<usize>,
}

impl DuetOrders {
    pub(crate) fn new(instance: &Instance) -> Self {
        DuetOrders {
            by_efficiency: sorted_indices(instance, SortKey::EfficiencyDesc, TieBreak::ById),
            by_valuation: sorted_indices(instance, SortKey::ValuationDesc, TieBreak::ById),
        }
    }

    /// GDA over the customers accepted by `in_pool`, with `forced` already
    /// supplied. The caller guarantees `forced` fits and is disjoint from
    /// the pool. Returns the retained indices (forced included) and their
    /// valuation.
    pub(crate) fn forced_gda<F>(
        &self,
        instance: &Instance,
        forced: &[usize],
        in_pool: F,
    ) -> (Vec<usize>, f64)
    where
        F: Fn(usize) -> bool,
    {
        let customers = instance.customers();
        let start: ComplexDemand = forced.iter().map(|&i| customers[i].demand).sum();
        let run = |order: &[usize]| {
            let mut retained = forced.to_vec();
            scan(
                instance,
                order.iter().copied().filter(|&i| in_pool(i)),
                start,
                &mut retained,
            );
            retained.sort_unstable();
            let value: f64 = retained
                .iter()
                .fold(0.0, |acc, &i| acc + customers[i].valuation);
            (retained, value)
        };
        let ratio_branch = run(&self.by_efficiency);
        let value_branch = run(&self.by_valuation);
        if value_branch.1 > ratio_branch.1 {
            value_branch
        } else {
            ratio_branch
        }
    }
}

/// GDA restricted to `pool`, with every customer in `forced` supplied
/// unconditionally. Feasibility checks include the forced aggregate.
pub fn gda_forced(
    instance: &Instance,
    forced: &[CustomerId],
    pool: &[CustomerId],
) -> Result<Solution> {
    let started = Instant::now();
    let n = instance.len();
    let mut forced_idx = Vec::with_capacity(forced.len());
    let mut is_forced = vec![false; n];
    for &id in forced {
        let i = instance.index_of(id)?;
        if !is_forced[i] {
            is_forced[i] = true;
            forced_idx.push(i);
        }
    }
    let mut in_pool = vec![false; n];
    for &id in pool {
        let i = instance.index_of(id)?;
        if is_forced[i] {
            return Err(Error::ForcedPoolOverlap(id));
        }
        in_pool[i] = true;
    }
    let start: ComplexDemand = forced_idx
        .iter()
        .map(|&i| instance.customers()[i].demand)
        .sum();
    if !instance.fits(start) {
        let mut ids: Vec<CustomerId> = forced.to_vec();
        ids.sort_unstable();
        ids.dedup();
        return Err(Error::ForcedInfeasible { ids });
    }
    let (retained, _) = DuetOrders::new(instance).forced_gda(instance, &forced_idx, |i| in_pool[i]);
    Ok(
        Solution::from_indices(instance, retained, Objective::Vmax, "gda_forced")
            .with_elapsed(started.elapsed()),
    )
}
