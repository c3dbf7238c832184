//! Accuracy against enumeration cost for the subset-seeded solver.

use std::time::Instant;

use curtail::*;

fn main() -> Result<()> {
    let mut spec = ScenarioSpec::new("FCM".parse()?, 16, 1.0, 11);
    spec.capacity_fraction = Some(0.3);
    let inst = generate(&spec)?;
    let opt = brute_force_vmax(&inst, OracleBudget::default())?.objective;
    println!("n = {}, optimum {opt:.4e}", inst.len());
    println!(
        "{:>8} {:>3} {:>10} {:>8} {:>10}",
        "epsilon", "m", "subsets", "ratio", "time"
    );
    for eps in [0.9, 0.5, 1.0 / 3.0, 0.25, 0.2, 1.0 / 6.0] {
        let config = GsaConfig::new(eps)?;
        let started = Instant::now();
        let s = gsa(&inst, config);
        println!(
            "{eps:>8.3} {:>3} {:>10} {:>8.4} {:>10.2?}",
            config.max_subset_size(inst.len()),
            gsa_complexity_estimate(inst.len(), eps)?,
            s.objective / opt,
            started.elapsed()
        );
    }
    Ok(())
}
