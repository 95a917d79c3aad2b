// The classical integral case alpha = 1, c = 1: averaging weights 2/(k+1)
// and the bound (4 beta - 1)/3, nonnegative exactly when beta >= 1/4. At
// beta = 1/4 every partial sum of a transformed member keeps nonnegative
// real part on the whole closed disk, whatever the cutoff.

use quasisum::bounds::{lower_bound, nonnegativity_threshold, verify, VERIFY_TOL};
use quasisum::classes::{generate_member, KernelSpec};
use quasisum::operators::bernardi_weight;
use quasisum::{ClassParams, ScanConfig};

fn main() -> quasisum::Result<()> {
    print!("integral weights 2/(k+1) for k = 2..8:");
    for k in 2..=8 {
        print!(" {:.4}", bernardi_weight(k, 1.0, 1.0));
    }
    println!();

    println!();
    println!("{:>6} {:>12} {:>12}", "beta", "bound", "threshold");
    for beta in [0.25, 0.5, 0.75] {
        let params = ClassParams::new(1, 1.0, beta, 1.0)?;
        println!(
            "{beta:>6} {:>12.6} {:>12.6}",
            lower_bound(&params),
            nonnegativity_threshold(&params)
        );
    }

    // the point mass at x = 1 is the least forgiving member generator
    let params = ClassParams::new(1, 1.0, 0.25, 1.0)?;
    let f = generate_member(&KernelSpec::default_point_mass(), &params, 64)?;
    let scan = ScanConfig::default();

    println!();
    println!("partial sums of the extremal-candidate member, bound 0:");
    println!("{:>4} {:>14} {:>12}", "m", "observed min", "margin");
    for m in [2, 5, 10, 32, 64] {
        let report = verify(&f, &params, m, &scan, VERIFY_TOL)?;
        println!(
            "{m:>4} {:>14.9} {:>12.3e}",
            report.observed_min, report.margin
        );
        assert_eq!(report.pass, Some(true));
    }
    Ok(())
}
