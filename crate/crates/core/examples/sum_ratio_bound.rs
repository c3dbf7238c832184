//! How much the magnitudes of first-quadrant vectors can overstate the
//! magnitude of their sum, against the half-angle bound.

use curtail::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    println!("{:>6} {:>10} {:>10}", "theta", "worst", "bound");
    for deg in [0.0, 18.0, 36.0, 60.0, 90.0] {
        let theta: f64 = f64::to_radians(deg);
        let mut worst: f64 = 1.0;
        for _ in 0..20_000 {
            let k = rng.random_range(2..=10);
            let ds: Vec<ComplexDemand> = (0..k)
                .map(|_| {
                    ComplexDemand::from_polar(
                        rng.random_range(0.1..1.0),
                        theta * rng.random::<f64>(),
                    )
                })
                .collect();
            worst = worst.max(magnitude_sum_ratio(&ds)?);
        }
        println!(
            "{deg:>6} {worst:>10.6} {:>10.6}",
            1.0 / half_angle_factor(theta)
        );
    }
    let pair = [ComplexDemand::new(1.0, 0.0), ComplexDemand::new(0.0, 1.0)];
    println!("orthogonal unit pair: {:.15}", magnitude_sum_ratio(&pair)?);
    Ok(())
}
