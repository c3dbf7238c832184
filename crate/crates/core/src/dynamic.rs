//! Fixed customer population under a generation capacity that fails and
//! recovers at exponentially distributed event times.
//!
//! A Failure shrinks the capacity by a uniform fraction of its current
//! value (never below the floor); a Resumption restores it to full. The
//! retained set is recomputed after every event.

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Customer, Instance, Objective};
use crate::oracle::OracleBudget;
use crate::scenario::{derive_seed, generate, ScenarioSpec};
use crate::solve::{solve, Algorithm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicConfig {
    /// Population template; `capacity` and `capacity_fraction` are ignored.
    pub base: ScenarioSpec,
    pub horizon_s: f64,
    pub event_rate: f64,
    pub fail_prob: f64,
    pub drop_range: (f64, f64),
    pub full_capacity: f64,
    pub floor_capacity: f64,
    pub algorithm: Algorithm,
    pub objective: Objective,
    /// Also records the exact optimum at every trace point.
    pub oracle_overlay: bool,
    pub oracle_budget: OracleBudget,
    pub seed: u64,
}

impl Default for DynamicConfig {
    fn default() -> Self {
        DynamicConfig {
            base: ScenarioSpec {
                n: 18,
                ..ScenarioSpec::default()
            },
            horizon_s: 10_000.0,
            event_rate: 0.005,
            fail_prob: 0.65,
            drop_range: (0.05, 0.35),
            full_capacity: 2_000_000.0,
            floor_capacity: 100_000.0,
            algorithm: Algorithm::Gda,
            objective: Objective::Vmax,
            oracle_overlay: false,
            oracle_budget: OracleBudget::default(),
            seed: 0,
        }
    }
}

impl DynamicConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let (lo, hi) = self.drop_range;
        if !(0.0..=1.0).contains(&self.fail_prob) {
            return bad(format!("fail_prob {} outside [0, 1]", self.fail_prob));
        }
        if !(0.0 < lo && lo <= hi && hi < 1.0) {
            return bad(format!(
                "drop range ({lo}, {hi}) must satisfy 0 < lo <= hi < 1"
            ));
        }
        if !(self.horizon_s.is_finite() && self.horizon_s > 0.0) {
            return bad(format!("horizon {} must be positive", self.horizon_s));
        }
        if !(self.event_rate.is_finite() && self.event_rate > 0.0) {
            return bad(format!("event rate {} must be positive", self.event_rate));
        }
        if !(self.floor_capacity > 0.0 && self.floor_capacity <= self.full_capacity)
            || !self.full_capacity.is_finite()
        {
            return bad(format!(
                "capacities must satisfy 0 < floor ({}) <= full ({})",
                self.floor_capacity, self.full_capacity
            ));
        }
        if self.objective == Objective::Cmin && matches!(self.algorithm, Algorithm::Gsa(_)) {
            return bad("gsa has no compensation-minimising variant".into());
        }
        if self.oracle_overlay || self.algorithm == Algorithm::Oracle {
            self.oracle_budget.check(self.base.n)?;
        }
        let mut probe = self.base.clone();
        probe.capacity_fraction = Some(1.0);
        probe.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CapacityEvent {
    Start,
    Failure,
    Resumption,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t_seconds: f64,
    pub event: CapacityEvent,
    pub capacity_va: f64,
    pub objective: f64,
    pub retained_count: usize,
    pub oracle_objective: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CapacityTrace {
    pub points: Vec<TracePoint>,
}

impl CapacityTrace {
    /// Capacity events, excluding the initial point.
    pub fn event_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.event != CapacityEvent::Start)
            .count()
    }
}

/// Objective and retained count when only customers that individually fit
/// under `capacity` are eligible; the rest are curtailed outright.
fn solve_at(
    customers: &[Customer],
    capacity: f64,
    cfg: &DynamicConfig,
    algorithm: Algorithm,
) -> Result<(f64, usize)> {
    let (eligible, excluded): (Vec<Customer>, Vec<Customer>) = customers
        .iter()
        .cloned()
        .partition(|c| c.demand.magnitude() <= capacity);
    let instance = Instance::new(eligible, capacity)?;
    let solution = solve(&instance, algorithm, cfg.objective, cfg.oracle_budget)?;
    let objective = match cfg.objective {
        Objective::Vmax => solution.objective,
        Objective::Cmin => excluded
            .iter()
            .fold(solution.objective, |acc, c| acc + c.compensation),
    };
    Ok((objective, solution.retained_ids.len()))
}

pub fn run_dynamic_capacity(cfg: &DynamicConfig) -> Result<CapacityTrace> {
    cfg.validate()?;
    let mut spec = cfg.base.clone();
    spec.capacity_fraction = Some(1.0);
    spec.seed = derive_seed(cfg.seed, &[0]);
    let customers = generate(&spec)?.customers().to_vec();

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[1]));
    let gaps =
        Exp::new(cfg.event_rate).map_err(|e| Error::InvalidConfig(format!("event rate: {e}")))?;
    let (lo, hi) = cfg.drop_range;

    let mut points = Vec::new();
    let mut record = |t: f64, event: CapacityEvent, capacity: f64| -> Result<()> {
        let (objective, retained_count) = solve_at(&customers, capacity, cfg, cfg.algorithm)?;
        let oracle_objective = if cfg.oracle_overlay {
            Some(solve_at(&customers, capacity, cfg, Algorithm::Oracle)?.0)
        } else {
            None
        };
        points.push(TracePoint {
            t_seconds: t,
            event,
            capacity_va: capacity,
            objective,
            retained_count,
            oracle_objective,
        });
        Ok(())
    };

    let mut t = 0.0;
    let mut capacity = cfg.full_capacity;
    record(t, CapacityEvent::Start, capacity)?;
    loop {
        t += gaps.sample(&mut rng);
        if t > cfg.horizon_s {
            break;
        }
        let event = if rng.random::<f64>() < cfg.fail_prob {
            let drop = if lo < hi {
                rng.random_range(lo..=hi)
            } else {
                lo
            };
            capacity = (capacity * (1.0 - drop)).max(cfg.floor_capacity);
            CapacityEvent::Failure
        } else {
            capacity = cfg.full_capacity;
            CapacityEvent::Resumption
        };
        record(t, event, capacity)?;
    }
    Ok(CapacityTrace { points })
}

/// Columns `t_seconds, capacity_va, objective, retained_count`, plus
/// `oracle_objective` when the trace carries the overlay.
pub fn write_trace_csv<W: Write>(trace: &CapacityTrace, out: W) -> csv::Result<()> {
    let overlay = trace.points.iter().any(|p| p.oracle_objective.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t_seconds", "capacity_va", "objective", "retained_count"];
    if overlay {
        header.push("oracle_objective");
    }
    w.write_record(&header)?;
    for p in &trace.points {
        let mut row = vec![
            p.t_seconds.to_string(),
            p.capacity_va.to_string(),
            p.objective.to_string(),
            p.retained_count.to_string(),
        ];
        if overlay {
            row.push(
                p.oracle_objective
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
            );
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_trace_csv(trace: &CapacityTrace, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_trace_csv(trace, file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}
