// Class members are generated constructively from mixtures of rotated
// half-plane kernels; the membership scan then recovers the class level from
// the series alone. A scan close to the boundary needs a truncation order
// deep enough that the dropped geometric tail cannot fake a dip, so this
// desk-size run scans at radius 0.9 where order 64 is already safe.

use num_complex::Complex64;
use quasisum::classes::{generate_member, membership_infimum, KernelSpec, MEMBERSHIP_TOL};
use quasisum::{ClassParams, NormalizedSeries, ScanConfig};

fn main() -> quasisum::Result<()> {
    let params = ClassParams::new(1, 2.0, 0.3, 1.0)?;
    let spec = KernelSpec::new(
        vec![
            Complex64::from_polar(1.0, 0.9),
            Complex64::from_polar(1.0, -1.7),
        ],
        vec![0.35, 0.65],
    )?;
    let order = 64;
    let scan = ScanConfig::default().with_radius(0.9)?;

    let f = generate_member(&spec, &params, order)?;
    let report = membership_infimum(&f, &params, &scan, MEMBERSHIP_TOL)?;
    println!("generated member, order {order}, two-point mixture:");
    println!(
        "  infimum {:.8} at theta = {:.6}",
        report.infimum, report.argmin_angle
    );
    println!("  level   {}", report.beta_threshold);
    println!("  member  {}", report.is_member);

    // the trivial member f = z has quantity identically 1
    let unit = NormalizedSeries::one(order);
    let report = membership_infimum(&unit, &params, &scan, MEMBERSHIP_TOL)?;
    println!();
    println!("f = z: infimum {:.8}, member {}", report.infimum, report.is_member);

    // f = z + z^2 is too steep: with first-order parameters its quantity is
    // 1 + 2z, whose real part reaches down to -1
    let steep = NormalizedSeries::new(vec![Complex64::new(1.0, 0.0)], 2)?;
    let plain = ClassParams::new(1, 1.0, 0.5, 1.0)?;
    let report = membership_infimum(&steep, &plain, &scan, MEMBERSHIP_TOL)?;
    println!(
        "f = z + z^2: infimum {:.8} against level {}, member {}",
        report.infimum, report.beta_threshold, report.is_member
    );
    Ok(())
}
