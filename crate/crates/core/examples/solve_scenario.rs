//! Generate an instance from a scenario acronym and compare the heuristics.
//!
//! cargo run --example solve_scenario -- FCM 2000

use std::time::Instant;

use curtail::*;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let scenario: Scenario = args.next().as_deref().unwrap_or("FCM").parse()?;
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);

    let inst = generate(&ScenarioSpec::new(scenario, n, 2e6, 7))?;
    println!(
        "{scenario}: n = {n}, capacity {} VA, total demand {:.0} VA, phase spread {:.1} deg",
        inst.capacity(),
        inst.customers()
            .iter()
            .map(|c| c.demand.magnitude())
            .sum::<f64>(),
        inst.max_phase_spread()?.to_degrees()
    );
    println!("fractional upper bound {:.4e}", lp_upper_bound(&inst));
    for algorithm in ["gva", "gma", "gra", "gda", "gsa:0.5"] {
        let started = Instant::now();
        let s = solve(
            &inst,
            algorithm.parse()?,
            Objective::Vmax,
            OracleBudget::default(),
        )?;
        println!(
            "{algorithm:<8} objective {:.4e}  retained {:>5}  |S| = {:.0} VA  {:?}",
            s.objective,
            s.retained_ids.len(),
            s.aggregate_demand.magnitude(),
            started.elapsed()
        );
    }
    Ok(())
}
