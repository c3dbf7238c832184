//! Compensation minimisation: curtail the fewest-cost customers until the
//! rest fits.

use curtail::*;

fn main() -> Result<()> {
    let mut spec = ScenarioSpec::new("FUM".parse()?, 16, 1.0, 21);
    spec.capacity_fraction = Some(0.5);
    let inst = generate(&spec)?;
    let opt = brute_force_cmin(&inst, OracleBudget::default())?;
    println!(
        "total compensation {:.4e}, cheapest curtailment {:.4e} of {:?}",
        inst.total_compensation(),
        opt.objective,
        opt.curtailed_ids(&inst)
    );
    for s in [
        cmin_gva(&inst),
        cmin_gma(&inst),
        cmin_gra(&inst),
        cmin_gda(&inst),
    ] {
        println!(
            "  {:<9} pays {:.4e} (x{:.3} of optimum), curtails {:?}",
            s.algorithm,
            s.objective,
            s.objective / opt.objective,
            s.curtailed_ids(&inst)
        );
    }
    Ok(())
}
