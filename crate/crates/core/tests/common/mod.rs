#![allow(dead_code)]

use curtail::{half_angle_factor, ComplexDemand, Customer, Instance, Scenario, ScenarioSpec};
use rand::Rng;

pub const THETA_36: f64 = 36.0 * std::f64::consts::PI / 180.0;

/// Relative comparison slack for objectives that reach ~1e12.
pub fn slack(reference: f64) -> f64 {
    1e-9 * reference.abs().max(1.0)
}

/// `(1/2)·cos(θ/2)` for the instance's own spread.
pub fn gda_factor(instance: &Instance) -> f64 {
    0.5 * half_angle_factor(instance.max_phase_spread().unwrap_or(0.0))
}

/// A generated instance with a random, binding capacity and a random
/// phase window of width at most 36°.
pub fn fuzz_generated<R: Rng>(rng: &mut R, scenario: Scenario, n: usize) -> Instance {
    let mut spec = ScenarioSpec::new(scenario, n, 1.0, rng.random());
    spec.capacity_fraction = Some(rng.random_range(0.1..0.9));
    spec.max_theta = rng.random_range(0.0..=THETA_36);
    spec.phase_anchor = rng.random_range(0.0..=(std::f64::consts::FRAC_PI_2 - spec.max_theta));
    curtail::generate(&spec).unwrap()
}

/// Small instance with arbitrary magnitudes and values, phases inside a
/// window of width `theta`.
pub fn fuzz_raw<R: Rng>(rng: &mut R, n: usize, theta: f64) -> Instance {
    let anchor = rng.random_range(0.0..=(std::f64::consts::FRAC_PI_2 - theta));
    let customers: Vec<Customer> = (0..n)
        .map(|k| {
            let d = ComplexDemand::from_polar(
                rng.random_range(0.1..10.0),
                anchor + theta * rng.random::<f64>(),
            );
            let value = rng.random_range(0.1..10.0);
            Customer::new(k as u32, d, value, rng.random_range(0.1..10.0))
        })
        .collect();
    let total: f64 = customers.iter().map(|c| c.demand.magnitude()).sum();
    let largest = customers
        .iter()
        .map(|c| c.demand.magnitude())
        .fold(0.0, f64::max);
    let capacity = (rng.random_range(0.1..0.9) * total).max(largest);
    Instance::new(customers, capacity).unwrap()
}

/// Classical 0-1 knapsack optimum by dynamic programming over integer
/// weights.
pub fn knapsack_dp(weights: &[u64], values: &[u64], capacity: u64) -> u64 {
    let mut best = vec![0u64; capacity as usize + 1];
    for (&w, &v) in weights.iter().zip(values) {
        for c in (w as usize..=capacity as usize).rev() {
            best[c] = best[c].max(best[c - w as usize] + v);
        }
    }
    best[capacity as usize]
}
