//! A trial plan with oracle ratios and confidence intervals, printed as CSV.

use curtail::bench::{report_to_csv, OracleMode};
use curtail::*;

fn main() -> Result<()> {
    let mut spec = ScenarioSpec::new("ACR".parse()?, 0, 1.0, 1);
    spec.capacity_fraction = Some(0.4);
    let mut plan = TrialPlan::new(spec, vec![10, 14, 18], 30);
    plan.algorithms = vec![
        Algorithm::Gva,
        Algorithm::Gra,
        Algorithm::Gda,
        Algorithm::Gsa(None),
    ];
    plan.oracle = OracleMode::BruteForce;
    let report = run_benchmark(&plan)?;
    print!("{}", report_to_csv(&report));
    Ok(())
}
