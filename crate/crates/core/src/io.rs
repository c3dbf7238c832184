//! JSON interchange for instances and solutions.
//!
//! Instance:
//! `{"capacity": C, "customers": [{"id", "p", "q", "valuation", "compensation"}]}`
//!
//! Solution:
//! `{"algorithm", "retained": [ids], "objective", "aggregate": {"p", "q"}, "elapsed_us"}`

use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ComplexDemand, Customer, CustomerId, Instance, Solution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomerRecord {
    pub id: CustomerId,
    pub p: f64,
    pub q: f64,
    pub valuation: f64,
    pub compensation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub capacity: f64,
    pub customers: Vec<CustomerRecord>,
}

impl From<&Instance> for InstanceRecord {
    fn from(inst: &Instance) -> Self {
        InstanceRecord {
            capacity: inst.capacity(),
            customers: inst
                .customers()
                .iter()
                .map(|c| CustomerRecord {
                    id: c.id,
                    p: c.demand.p,
                    q: c.demand.q,
                    valuation: c.valuation,
                    compensation: c.compensation,
                })
                .collect(),
        }
    }
}

impl TryFrom<InstanceRecord> for Instance {
    type Error = Error;

    fn try_from(rec: InstanceRecord) -> Result<Self> {
        let customers = rec
            .customers
            .into_iter()
            .map(|c| {
                Customer::new(
                    c.id,
                    ComplexDemand::new(c.p, c.q),
                    c.valuation,
                    c.compensation,
                )
            })
            .collect();
        Instance::new(customers, rec.capacity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub algorithm: String,
    pub retained: Vec<CustomerId>,
    pub objective: f64,
    pub aggregate: ComplexDemand,
    pub elapsed_us: u64,
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        SolutionRecord {
            algorithm: s.algorithm.clone(),
            retained: s.retained_ids.clone(),
            objective: s.objective,
            aggregate: s.aggregate_demand,
            elapsed_us: u64::try_from(s.elapsed.as_micros()).unwrap_or(u64::MAX),
        }
    }
}

impl From<SolutionRecord> for Solution {
    fn from(r: SolutionRecord) -> Self {
        Solution {
            retained_ids: r.retained,
            objective: r.objective,
            aggregate_demand: r.aggregate,
            algorithm: r.algorithm,
            elapsed: Duration::from_micros(r.elapsed_us),
        }
    }
}

/// Parses an instance; `context` names the source in error messages.
pub fn parse_instance(text: &str, context: &str) -> Result<Instance> {
    let rec: InstanceRecord = serde_json::from_str(text).map_err(|source| Error::Json {
        context: context.to_string(),
        source,
    })?;
    rec.try_into()
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text, &path.display().to_string())
}

pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceRecord::from(instance)).expect("instance serializes")
}

pub fn write_instance(instance: &Instance, path: &Path) -> Result<()> {
    write_text(path, &(instance_to_json(instance) + "\n"))
}

pub fn solution_to_json(solution: &Solution) -> String {
    serde_json::to_string_pretty(&SolutionRecord::from(solution)).expect("solution serializes")
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
