// Termwise products against a factor with real part above one half stay in
// the convex hull of the other factor's image. The check needs the factor's
// half-plane condition to survive truncation at radius 0.999, which takes a
// truncation order in the thousands; with the tail that deep, mixtures of
// rotated kernels pass cleanly.

use num_complex::Complex64;
use quasisum::classes::{half_plane_factor, KernelSpec};
use quasisum::hull::hull_membership_check;
use quasisum::operators::convolution_kernel;
use quasisum::{ClassParams, ScanConfig};

fn main() -> quasisum::Result<()> {
    let params = ClassParams::new(1, 1.0, 0.25, 1.0)?;
    let order = 8192;
    let m = 8;
    let scan = ScanConfig::default();
    let target = convolution_kernel(m, order, &params)?;

    let specs = [
        ("point mass at 1", KernelSpec::default_point_mass()),
        (
            "two-point mixture",
            KernelSpec::new(
                vec![
                    Complex64::from_polar(1.0, 1.1),
                    Complex64::from_polar(1.0, -2.6),
                ],
                vec![0.6, 0.4],
            )?,
        ),
    ];

    for (name, spec) in &specs {
        let factor = half_plane_factor(spec, order);
        let report = hull_membership_check(&factor, &target, &scan, 1e-6)?;
        println!("{name}:");
        println!("  factor min re     {:.9}", report.factor_min_re);
        println!("  precondition ok   {}", report.precondition_ok);
        println!("  hull vertices     {}", report.hull_vertices);
        println!(
            "  largest distance  {:+.3e} over {} samples",
            report.max_outside_distance, report.samples
        );
        println!("  pass              {:?}", report.pass);
        println!();
    }

    // a factor built on a shallow truncation loses the half-plane condition
    // near the boundary; the check then refuses to claim anything
    let shallow = half_plane_factor(&specs[1].1, 64);
    let target64 = convolution_kernel(m, 64, &params)?;
    let report = hull_membership_check(&shallow, &target64, &scan, 1e-6)?;
    println!("same mixture truncated at order 64:");
    println!("  factor min re     {:.9}", report.factor_min_re);
    println!("  precondition ok   {}", report.precondition_ok);
    println!(
        "  largest distance  {:+.3e} (reported, not judged)",
        report.max_outside_distance
    );
    println!("  pass              {:?}", report.pass);
    Ok(())
}
