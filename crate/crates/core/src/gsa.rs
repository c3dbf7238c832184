//! Greedy Strive Algorithm: subset enumeration boosted by forced GDA runs.
//!
//! With `m = min(⌈1/ε⌉ − 2, n)`, every feasible subset smaller than `m` is
//! scored directly, and every feasible subset `Ŝ` of size exactly `m` seeds
//! a GDA run over the customers valued no higher than `min u(Ŝ)`, with
//! `Ŝ` supplied unconditionally. The best candidate is within
//! `(1 − ε)·cos(θ/2)` of the optimum.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::{gda, DuetOrders};
use crate::model::{ComplexDemand, Instance, Objective, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsaConfig {
    epsilon: f64,
}

impl GsaConfig {
    /// Default for scenarios that mix industrial and residential customers.
    pub const MIXED: GsaConfig = GsaConfig { epsilon: 0.25 };
    /// Default for residential-only scenarios.
    pub const RESIDENTIAL: GsaConfig = GsaConfig { epsilon: 1.0 / 3.0 };

    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon < 1.0 {
            Ok(GsaConfig { epsilon })
        } else {
            Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `min(⌈1/ε⌉ − 2, n)`, clamped at zero.
    pub fn max_subset_size(&self, n: usize) -> usize {
        // guard against 1/ε landing a hair above an integer
        let ceil = (1.0 / self.epsilon - 1e-12).ceil();
        let m = (ceil - 2.0).max(0.0);
        if m >= n as f64 {
            n
        } else {
            m as usize
        }
    }
}

/// Number of subsets GSA examines: `Σ_{s=0}^{m} C(n, s)`, saturating.
pub fn gsa_complexity_estimate(n: usize, epsilon: f64) -> Result<u64> {
    let m = GsaConfig::new(epsilon)?.max_subset_size(n);
    let mut total: u64 = 0;
    let mut binom: u128 = 1;
    for s in 0..=m {
        if s > 0 {
            binom = binom * (n - s + 1) as u128 / s as u128;
        }
        let term = u64::try_from(binom).unwrap_or(u64::MAX);
        total = total.saturating_add(term);
        if total == u64::MAX || binom > u64::MAX as u128 {
            return Ok(u64::MAX);
        }
    }
    Ok(total)
}

/// Visits every `k`-subset of `lo..n` in lexicographic order, appended to
/// `prefix`.
fn for_each_combination<F>(prefix: &mut Vec<usize>, lo: usize, n: usize, k: usize, f: &mut F)
where
    F: FnMut(&[usize]),
{
    if k == 0 {
        f(prefix);
        return;
    }
    if n < k {
        return;
    }
    for i in lo..=n - k {
        prefix.push(i);
        for_each_combination(prefix, i + 1, n, k - 1, f);
        prefix.pop();
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    retained: Vec<usize>,
    value: f64,
}

fn subset_fits(instance: &Instance, subset: &[usize]) -> bool {
    let customers = instance.customers();
    instance.fits(
        subset
            .iter()
            .map(|&i| customers[i].demand)
            .sum::<ComplexDemand>(),
    )
}

fn subset_value(instance: &Instance, subset: &[usize]) -> f64 {
    subset
        .iter()
        .fold(0.0, |acc, &i| acc + instance.customers()[i].valuation)
}

/// Best feasible subset of size below `m`; earliest lexicographic wins ties.
fn small_subsets(instance: &Instance, m: usize) -> Candidate {
    let mut best = Candidate {
        retained: Vec::new(),
        value: 0.0,
    };
    for size in 1..m {
        for_each_combination(&mut Vec::new(), 0, instance.len(), size, &mut |s| {
            if subset_fits(instance, s) {
                let value = subset_value(instance, s);
                if value > best.value {
                    best = Candidate {
                        retained: s.to_vec(),
                        value,
                    };
                }
            }
        });
    }
    best
}

/// Forced GDA seeded by one size-`m` subset, or `None` when it overflows.
fn seeded_run(instance: &Instance, orders: &DuetOrders, seed: &[usize]) -> Option<Candidate> {
    if !subset_fits(instance, seed) {
        return None;
    }
    let customers = instance.customers();
    let floor = seed
        .iter()
        .map(|&i| customers[i].valuation)
        .fold(f64::INFINITY, f64::min);
    let (retained, value) = orders.forced_gda(instance, seed, |j| {
        customers[j].valuation <= floor && !seed.contains(&j)
    });
    Some(Candidate { retained, value })
}

/// Best seeded run over size-`m` subsets whose first element is `first`.
fn seeded_runs_from(
    instance: &Instance,
    orders: &DuetOrders,
    m: usize,
    first: usize,
) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    let mut prefix = vec![first];
    for_each_combination(&mut prefix, first + 1, instance.len(), m - 1, &mut |seed| {
        if let Some(c) = seeded_run(instance, orders, seed) {
            if best.as_ref().is_none_or(|b| c.value > b.value) {
                best = Some(c);
            }
        }
    });
    best
}

fn reduce(phase_one: Candidate, seeded: impl IntoIterator<Item = Option<Candidate>>) -> Candidate {
    let mut best_seeded: Option<Candidate> = None;
    for c in seeded.into_iter().flatten() {
        if best_seeded.as_ref().is_none_or(|b| c.value > b.value) {
            best_seeded = Some(c);
        }
    }
    match best_seeded {
        Some(s) if s.value >= phase_one.value => s,
        _ => phase_one,
    }
}

fn finish(instance: &Instance, best: Candidate, started: Instant) -> Solution {
    Solution::from_indices(instance, best.retained, Objective::Vmax, "gsa")
        .with_elapsed(started.elapsed())
}

/// Greedy Strive Algorithm, evaluated sequentially.
///
/// When `m = 0` (ε ≥ ½) the enumeration is empty and the result is a
/// plain GDA run.
pub fn gsa(instance: &Instance, config: GsaConfig) -> Solution {
    let started = Instant::now();
    let m = config.max_subset_size(instance.len());
    if m == 0 {
        return gda(instance)
            .with_algorithm("gsa")
            .with_elapsed(started.elapsed());
    }
    let orders = DuetOrders::new(instance);
    let phase_one = small_subsets(instance, m);
    let n = instance.len();
    let seeded = (0..=n - m).map(|first| seeded_runs_from(instance, &orders, m, first));
    finish(instance, reduce(phase_one, seeded), started)
}

/// Same result as [`gsa`], with the size-`m` subsets spread over the rayon
/// pool. The reduction runs in lexicographic order, so the output is
/// identical to the sequential run.
pub fn gsa_parallel(instance: &Instance, config: GsaConfig) -> Solution {
    let started = Instant::now();
    let m = config.max_subset_size(instance.len());
    if m == 0 {
        return gda(instance)
            .with_algorithm("gsa")
            .with_elapsed(started.elapsed());
    }
    let orders = DuetOrders::new(instance);
    let n = instance.len();
    let (phase_one, seeded) = rayon::join(
        || small_subsets(instance, m),
        || {
            (0..=n - m)
                .into_par_iter()
                .map(|first| seeded_runs_from(instance, &orders, m, first))
                .collect::<Vec<_>>()
        },
    );
    finish(instance, reduce(phase_one, seeded), started)
}
