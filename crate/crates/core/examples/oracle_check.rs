//! Exact optimum, fractional bound and heuristic ratios on a small
//! instance, plus the budget refusal for a large one.

use curtail::*;

fn main() -> Result<()> {
    let mut spec = ScenarioSpec::new("FUI".parse()?, 18, 1.0, 3);
    spec.capacity_fraction = Some(0.35);
    let inst = generate(&spec)?;
    let opt = brute_force_vmax(&inst, OracleBudget::default())?;
    let theta = inst.max_phase_spread()?;
    println!(
        "optimum {:.4e} retaining {:?}",
        opt.objective, opt.retained_ids
    );
    println!(
        "fractional bound {:.4e} (at least cos(theta/2) * optimum = {:.4e})",
        lp_upper_bound(&inst),
        half_angle_factor(theta) * opt.objective
    );
    for s in [
        gva(&inst),
        gma(&inst),
        gra(&inst),
        gda(&inst),
        gsa(&inst, GsaConfig::MIXED),
    ] {
        println!(
            "  {:<4} ratio {:.4}",
            s.algorithm,
            s.objective / opt.objective
        );
    }
    println!(
        "gda guarantee at this spread: {:.4}",
        0.5 * half_angle_factor(theta)
    );

    spec.n = 25;
    match brute_force_vmax(&generate(&spec)?, OracleBudget::default()) {
        Err(e) => println!("n = 25: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!("default budget stops at n = 20"),
    }
    Ok(())
}
