//! Solvers for the complex-demand knapsack problem behind demand-response
//! load curtailment.
//!
//! Each customer has a complex power demand `d = P + jQ` in the first
//! quadrant plus a valuation and a compensation. Valuation maximisation
//! picks customers to supply so that `|Σ d| <= C`; compensation
//! minimisation picks customers to curtail so that the rest fits.

pub mod bench;
pub mod cli;
pub mod cmin;
pub mod dynamic;
pub mod error;
pub mod greedy;
pub mod gsa;
pub mod io;
pub mod model;
pub mod oracle;
pub mod scenario;
pub mod solve;
pub mod valuation;

pub use bench::{run_benchmark, BenchmarkReport, OracleMode, ReportRow, TrialPlan};
pub use cmin::{cmin_gda, cmin_gma, cmin_gra, cmin_gva};
pub use dynamic::{run_dynamic_capacity, CapacityTrace, DynamicConfig, TracePoint};
pub use error::{Error, Result};
pub use greedy::{gda, gda_forced, gma, gra, gva, SortKey, TieBreak};
pub use gsa::{gsa, gsa_complexity_estimate, gsa_parallel, GsaConfig};
pub use model::{
    half_angle_factor, magnitude_sum_ratio, phase_spread, ComplexDemand, Customer, CustomerId, Instance,
    Objective, Solution,
};
pub use oracle::{brute_force_cmin, brute_force_vmax, lp_upper_bound, OracleBudget};
pub use scenario::{generate, Scenario, ScenarioSpec};
pub use solve::{solve, Algorithm};
pub use valuation::ValuationModel;
