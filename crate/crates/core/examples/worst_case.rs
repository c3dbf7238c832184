//! The two instances on which a single greedy order does badly, and how
//! pairing the value and ratio orders recovers.

use curtail::*;

fn active(id: CustomerId, magnitude: f64, value: f64) -> Customer {
    Customer::symmetric(id, ComplexDemand::new(magnitude, 0.0), value)
}

fn report(name: &str, inst: &Instance) -> Result<()> {
    let opt = brute_force_vmax(inst, OracleBudget::default())?;
    println!(
        "{name} (optimum {} with {:?})",
        opt.objective, opt.retained_ids
    );
    for s in [gva(inst), gma(inst), gra(inst), gda(inst)] {
        println!(
            "  {:<4} {:>6} {:?}",
            s.algorithm, s.objective, s.retained_ids
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    // Magnitude order keeps the tiny customer and loses the big one.
    let f = 100.0;
    let one = Instance::new(vec![active(1, 1.0, 1.0), active(2, f, f)], f)?;
    report("example 1, F = 100", &one)?;

    // Value order keeps the single large customer; the ratio order fits b - 1 small ones.
    let b = 5;
    let mut cs = vec![active(1, 10.0, 10.0)];
    cs.extend((2..=b).map(|id| active(id, 2.0, 9.0)));
    report("example 2, b = 5, C = 10", &Instance::new(cs, 10.0)?)
}
