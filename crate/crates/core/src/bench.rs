//! Repeated-trial experiments with approximation ratios against a
//! yardstick, 95% confidence intervals and CSV output.
//!
//! Every trial draws its instance from a seed derived from
//! `(plan seed, n, trial index)`, so trial content never depends on which
//! other trials ran or on how many threads ran them.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gsa::GsaConfig;
use crate::model::{Objective, Solution};
use crate::oracle::{brute_force_cmin, brute_force_vmax, lp_upper_bound, OracleBudget};
use crate::scenario::{derive_seed, generate, LoadType, ScenarioSpec};
use crate::solve::{solve, Algorithm};

/// Minimum trials per customer count when confidence intervals are reported.
pub const MIN_TRIALS_FOR_CI: usize = 30;

/// z-score of a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    BruteForce,
    LpBound,
    #[default]
    None,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialPlan {
    /// Template; `n` and `seed` are replaced per trial.
    pub scenario: ScenarioSpec,
    pub n_values: Vec<usize>,
    pub trials_per_n: usize,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_objective")]
    pub objective: Objective,
    #[serde(default)]
    pub oracle: OracleMode,
    #[serde(default)]
    pub oracle_budget: OracleBudget,
    #[serde(default = "yes")]
    pub confidence_intervals: bool,
    /// When false, elapsed times are recorded as zero so the report is a
    /// pure function of the plan.
    #[serde(default = "yes")]
    pub measure_time: bool,
    /// Worker threads; 0 uses the global rayon pool.
    #[serde(default)]
    pub threads: usize,
}

fn default_objective() -> Objective {
    Objective::Vmax
}

impl TrialPlan {
    pub fn new(scenario: ScenarioSpec, n_values: Vec<usize>, trials_per_n: usize) -> Self {
        TrialPlan {
            scenario,
            n_values,
            trials_per_n,
            algorithms: vec![Algorithm::Gda],
            objective: Objective::Vmax,
            oracle: OracleMode::None,
            oracle_budget: OracleBudget::default(),
            confidence_intervals: true,
            measure_time: true,
            threads: 0,
        }
    }

    /// ε = 1/3 for residential-only scenarios, 1/4 otherwise.
    pub fn default_epsilon(&self) -> f64 {
        if self.scenario.scenario.load == LoadType::Residential {
            GsaConfig::RESIDENTIAL.epsilon()
        } else {
            GsaConfig::MIXED.epsilon()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_values.is_empty() || self.algorithms.is_empty() || self.trials_per_n == 0 {
            return bad("plan needs at least one n value, one algorithm and one trial".into());
        }
        if self.confidence_intervals && self.trials_per_n < MIN_TRIALS_FOR_CI {
            return bad(format!(
                "confidence intervals need at least {MIN_TRIALS_FOR_CI} trials per n, got {}",
                self.trials_per_n
            ));
        }
        if self.oracle == OracleMode::LpBound && self.objective == Objective::Cmin {
            return bad("the fractional bound only applies to valuation maximisation".into());
        }
        if self.objective == Objective::Cmin
            && self
                .algorithms
                .iter()
                .any(|a| matches!(a, Algorithm::Gsa(_)))
        {
            return bad("gsa has no compensation-minimising variant".into());
        }
        let needs_oracle =
            self.oracle == OracleMode::BruteForce || self.algorithms.contains(&Algorithm::Oracle);
        if needs_oracle {
            for &n in &self.n_values {
                self.oracle_budget.check(n)?;
            }
        }
        let mut probe = self.scenario.clone();
        probe.n = 0;
        probe.validate()
    }
}

/// One algorithm's outcome on one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub algorithm: String,
    pub objective: f64,
    /// Against the plan's yardstick, in `[0, 1]` for exact oracles.
    pub ratio: Option<f64>,
    pub elapsed: Duration,
}

/// Heuristic quality relative to a yardstick, with 0/0 read as 1.
pub fn approximation_ratio(objective: Objective, heuristic: f64, reference: f64) -> f64 {
    let (num, den) = match objective {
        Objective::Vmax => (heuristic, reference),
        Objective::Cmin => (reference, heuristic),
    };
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

fn run_trial(plan: &TrialPlan, n: usize, trial: usize) -> Result<Vec<TrialRecord>> {
    let mut spec = plan.scenario.clone();
    spec.n = n;
    spec.seed = derive_seed(plan.scenario.seed, &[n as u64, trial as u64]);
    let instance = generate(&spec)?;
    let reference = match plan.oracle {
        OracleMode::BruteForce => Some(match plan.objective {
            Objective::Vmax => brute_force_vmax(&instance, plan.oracle_budget)?.objective,
            Objective::Cmin => brute_force_cmin(&instance, plan.oracle_budget)?.objective,
        }),
        OracleMode::LpBound => Some(lp_upper_bound(&instance)),
        OracleMode::None => None,
    };
    let epsilon = plan.default_epsilon();
    plan.algorithms
        .iter()
        .map(|&algorithm| {
            let algorithm = algorithm.with_default_epsilon(epsilon);
            let solution: Solution =
                solve(&instance, algorithm, plan.objective, plan.oracle_budget)?;
            Ok(TrialRecord {
                n,
                trial,
                algorithm: algorithm.to_string(),
                objective: solution.objective,
                ratio: reference
                    .map(|r| approximation_ratio(plan.objective, solution.objective, r)),
                elapsed: if plan.measure_time {
                    solution.elapsed
                } else {
                    Duration::ZERO
                },
            })
        })
        .collect()
}

/// Runs every trial and returns the raw per-trial records in
/// `(n, trial, algorithm)` order.
pub fn run_trials(plan: &TrialPlan) -> Result<Vec<TrialRecord>> {
    plan.validate()?;
    let tasks: Vec<(usize, usize)> = plan
        .n_values
        .iter()
        .flat_map(|&n| (0..plan.trials_per_n).map(move |t| (n, t)))
        .collect();
    let work = || {
        tasks
            .par_iter()
            .map(|&(n, t)| run_trial(plan, n, t))
            .collect::<Result<Vec<_>>>()
    };
    let nested = if plan.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(plan.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(work)?
    } else {
        work()?
    };
    Ok(nested.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub scenario: String,
    pub n: usize,
    pub algorithm: String,
    pub trials: usize,
    pub mean_objective: f64,
    pub mean_ratio: Option<f64>,
    /// Half-width of the 95% interval on the ratio (or on the objective
    /// when there is no yardstick).
    pub ci95_halfwidth: Option<f64>,
    pub worst_ratio: Option<f64>,
    pub mean_elapsed_us: f64,
    pub ci95_elapsed_us: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchmarkReport {
    pub rows: Vec<ReportRow>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// `1.96·s/√t` with the sample standard deviation.
pub fn ci95_halfwidth(xs: &[f64]) -> f64 {
    let t = xs.len();
    if t < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (t - 1) as f64;
    Z95 * var.sqrt() / (t as f64).sqrt()
}

/// Aggregates raw records into one row per `(n, algorithm)`.
pub fn summarize(plan: &TrialPlan, records: &[TrialRecord]) -> BenchmarkReport {
    let acronym = plan.scenario.acronym();
    let epsilon = plan.default_epsilon();
    let mut rows = Vec::new();
    for &n in &plan.n_values {
        for algorithm in &plan.algorithms {
            let tag = algorithm.with_default_epsilon(epsilon).to_string();
            let group: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.n == n && r.algorithm == tag)
                .collect();
            if group.is_empty() {
                continue;
            }
            let objectives: Vec<f64> = group.iter().map(|r| r.objective).collect();
            let ratios: Option<Vec<f64>> = group.iter().map(|r| r.ratio).collect();
            let elapsed: Vec<f64> = group
                .iter()
                .map(|r| r.elapsed.as_secs_f64() * 1e6)
                .collect();
            let ci = |xs: &[f64]| plan.confidence_intervals.then(|| ci95_halfwidth(xs));
            rows.push(ReportRow {
                scenario: acronym.clone(),
                n,
                algorithm: tag,
                trials: group.len(),
                mean_objective: mean(&objectives),
                mean_ratio: ratios.as_deref().map(mean),
                ci95_halfwidth: ci(ratios.as_deref().unwrap_or(&objectives)),
                worst_ratio: ratios
                    .as_deref()
                    .map(|rs| rs.iter().copied().fold(f64::INFINITY, f64::min)),
                mean_elapsed_us: mean(&elapsed),
                ci95_elapsed_us: ci(&elapsed),
            });
        }
    }
    BenchmarkReport { rows }
}

pub fn run_benchmark(plan: &TrialPlan) -> Result<BenchmarkReport> {
    let records = run_trials(plan)?;
    Ok(summarize(plan, &records))
}

const CSV_HEADER: [&str; 10] = [
    "scenario",
    "n",
    "algorithm",
    "trials",
    "mean_objective",
    "mean_ratio",
    "ci95_halfwidth",
    "worst_ratio",
    "mean_elapsed_us",
    "ci95_elapsed_us",
];

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the report as RFC 4180 CSV.
pub fn write_csv<W: Write>(report: &BenchmarkReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.rows {
        w.write_record([
            r.scenario.clone(),
            r.n.to_string(),
            r.algorithm.clone(),
            r.trials.to_string(),
            r.mean_objective.to_string(),
            opt(r.mean_ratio),
            opt(r.ci95_halfwidth),
            opt(r.worst_ratio),
            r.mean_elapsed_us.to_string(),
            opt(r.ci95_elapsed_us),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn report_to_csv(report: &BenchmarkReport) -> String {
    let mut buf = Vec::new();
    write_csv(report, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn emit_csv(report: &BenchmarkReport, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(report, file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Scenario;

    fn row(n: usize) -> ReportRow {
        ReportRow {
            scenario: "FCR".into(),
            n,
            algorithm: "gsa:0.25".into(),
            trials: 30,
            mean_objective: 1.5,
            mean_ratio: Some(0.9),
            ci95_halfwidth: Some(0.01),
            worst_ratio: Some(0.8),
            mean_elapsed_us: 12.0,
            ci95_elapsed_us: None,
        }
    }

    #[test]
    fn csv_shapes() {
        let empty = report_to_csv(&BenchmarkReport::default());
        assert_eq!(empty.lines().count(), 1);
        assert!(empty.starts_with("scenario,n,algorithm,trials,mean_objective"));
        let two = BenchmarkReport {
            rows: vec![row(10), row(20)],
        };
        let text = report_to_csv(&two);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "FCR,10,gsa:0.25,30,1.5,0.9,0.01,0.8,12,"
        );
        assert_eq!(text, report_to_csv(&two));
    }

    #[test]
    fn csv_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let report = BenchmarkReport { rows: vec![row(5)] };
        emit_csv(&report, &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        emit_csv(&report, &path).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());
        let err = emit_csv(&report, &dir.path().join("missing/r.csv")).unwrap_err();
        assert!(err.to_string().contains("missing"));
    }

    #[test]
    fn ci_formula() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        // sample sd = sqrt(5/3)
        let expected = 1.96 * (5.0f64 / 3.0).sqrt() / 2.0;
        assert!((ci95_halfwidth(&xs) - expected).abs() < 1e-15);
        assert_eq!(ci95_halfwidth(&[3.0]), 0.0);
    }

    #[test]
    fn ratios() {
        assert_eq!(approximation_ratio(Objective::Vmax, 3.0, 4.0), 0.75);
        assert_eq!(approximation_ratio(Objective::Cmin, 4.0, 3.0), 0.75);
        assert_eq!(approximation_ratio(Objective::Vmax, 0.0, 0.0), 1.0);
        assert_eq!(approximation_ratio(Objective::Cmin, 0.0, 0.0), 1.0);
    }

    fn small_plan() -> TrialPlan {
        let mut spec = ScenarioSpec::new("ACR".parse::<Scenario>().unwrap(), 0, 1.0, 9);
        spec.capacity_fraction = Some(0.4);
        let mut plan = TrialPlan::new(spec, vec![6, 9], 30);
        plan.algorithms = vec![Algorithm::Gda, Algorithm::Gva, Algorithm::Gsa(None)];
        plan.oracle = OracleMode::BruteForce;
        plan.measure_time = false;
        plan
    }

    #[test]
    fn report_invariants() {
        let report = run_benchmark(&small_plan()).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert_eq!(report.rows[2].algorithm, "gsa:0.3333333333333333");
        for r in &report.rows {
            let worst = r.worst_ratio.unwrap();
            let m = r.mean_ratio.unwrap();
            assert!(worst <= m);
            assert!(m <= 1.0 + 1e-12 && worst >= 0.0);
            assert_eq!(r.mean_elapsed_us, 0.0);
        }
    }

    #[test]
    fn plan_validation() {
        let mut p = small_plan();
        p.trials_per_n = 10;
        assert!(p.validate().is_err());
        p.confidence_intervals = false;
        assert!(p.validate().is_ok());
        p.n_values = vec![25];
        assert!(matches!(p.validate(), Err(Error::OracleBudget { .. })));
        let mut p = small_plan();
        p.objective = Objective::Cmin;
        assert!(p.validate().is_err());
        p.algorithms = vec![Algorithm::Gda];
        assert!(p.validate().is_ok());
        p.oracle = OracleMode::LpBound;
        assert!(p.validate().is_err());
    }

    #[test]
    fn trial_content_is_independent_of_neighbours() {
        let plan = small_plan();
        let all = run_trials(&plan).unwrap();
        let mut only_second_n = plan.clone();
        only_second_n.n_values = vec![9];
        let part = run_trials(&only_second_n).unwrap();
        let tail: Vec<_> = all.into_iter().filter(|r| r.n == 9).collect();
        assert_eq!(tail, part);
    }

    #[test]
    fn plan_json_defaults() {
        let plan: TrialPlan = serde_json::from_str(
            r#"{"scenario": {"scenario": "FUM", "capacity_fraction": 0.3, "seed": 1},
                "n_values": [8], "trials_per_n": 30, "algorithms": ["gda", "gsa:0.25"],
                "oracle": "brute_force"}"#,
        )
        .unwrap();
        assert_eq!(plan.objective, Objective::Vmax);
        assert!(plan.measure_time && plan.confidence_intervals);
        assert_eq!(plan.algorithms[1], Algorithm::Gsa(Some(0.25)));
        assert!(plan.validate().is_ok());
    }
}
