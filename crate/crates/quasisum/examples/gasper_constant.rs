// Bisection estimate of the largest shift gamma for which
// 1/(1+gamma) + sum_{k=1}^{l} cos(k theta)/(k+gamma) stays nonnegative for
// every angle and every length l. The sign of the scanned minimum flips
// between 4 and 5; bisecting it pins the critical constant.

use quasisum::cosine::{cosine_sum_min, estimate_best_constant};
use quasisum::{ScanConfig, GASPER_CONSTANT};

fn main() -> quasisum::Result<()> {
    let scan = ScanConfig::default();
    let lmax = 200;

    println!("endpoint minima over l <= {lmax}:");
    for gamma in [4.0, 5.0] {
        let min = cosine_sum_min(gamma, lmax, &scan)?;
        println!(
            "  gamma = {gamma}: min {:+.6e} at theta = {:.6}, {} terms",
            min.value, min.theta, min.terms
        );
    }

    let estimate = estimate_best_constant(lmax, 1e-6, &scan)?;
    println!();
    println!("critical shift   {:.7}", estimate.constant);
    println!(
        "bracket          [{:.7}, {:.7}]",
        estimate.bracket.0, estimate.bracket.1
    );
    println!(
        "critical dip     {} terms at theta = {:.6}",
        estimate.critical_terms, estimate.critical_theta
    );
    println!("reference value  {GASPER_CONSTANT}");
    Ok(())
}
