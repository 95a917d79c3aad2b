// Where the shifted sums dip lowest. Below the critical shift the cosine
// sums never go negative and the circle power sums respect the floor
// -1/(1+gamma); above it both dip through, which is exactly what limits the
// parameter range of the partial-sum bound.

use quasisum::cosine::{cosine_sum_min, power_sum_floor, power_sum_min};
use quasisum::ScanConfig;

fn main() -> quasisum::Result<()> {
    let scan = ScanConfig::default();
    let lmax = 200;

    println!("cosine sum minima over l <= {lmax}:");
    println!("{:>10} {:>14} {:>6} {:>10}", "gamma", "min", "terms", "theta");
    for gamma in [-0.5, 0.0, 1.0, 3.0, 4.5, 4.5678018, 5.0, 6.0] {
        let min = cosine_sum_min(gamma, lmax, &scan)?;
        println!(
            "{gamma:>10} {:>14.6e} {:>6} {:>10.6}",
            min.value, min.terms, min.theta
        );
    }

    println!();
    println!("power sum minima on the unit circle against the floor:");
    println!("{:>8} {:>6} {:>13} {:>13}", "gamma", "terms", "min", "floor");
    for gamma in [0.0, 1.0, 2.0, 4.5] {
        for terms in [1, 5, 50] {
            let (min, _) = power_sum_min(gamma, terms, &scan)?;
            println!(
                "{gamma:>8} {terms:>6} {min:>13.8} {:>13.8}",
                power_sum_floor(gamma)
            );
        }
    }
    Ok(())
}
