// The transform chain (integral weights, cutoff, differential weights) acting
// on a lifted series is the same thing as a termwise product of two simpler
// objects: a factor carrying the series' own coefficients and a fixed kernel
// polynomial carrying the weights. The identity is exact in coefficients, so
// the residual below sits at rounding level.

use num_complex::Complex64;
use quasisum::operators::{
    bernardi, caratheodory_factor, convolution_kernel, quasi_partial_sum, salagean,
};
use quasisum::{ClassParams, NormalizedSeries};

fn main() -> quasisum::Result<()> {
    let params = ClassParams::new(2, 1.5, 0.3, 0.5)?;
    let m = 6;
    let u = NormalizedSeries::new(
        vec![
            Complex64::new(0.5, 0.3),
            Complex64::new(-0.2, 0.1),
            Complex64::new(0.07, -0.02),
            Complex64::new(0.01, 0.004),
            Complex64::new(-0.003, 0.001),
            Complex64::new(0.001, 0.0),
            Complex64::new(0.0004, -0.0002),
        ],
        8,
    )?;

    let chain = salagean(
        &quasi_partial_sum(&bernardi(&u, params.alpha(), params.c())?, m)?,
        params.n(),
        params.alpha(),
    )?;
    let product = caratheodory_factor(&u, &params)
        .hadamard(&convolution_kernel(m, u.order(), &params)?)?;

    println!("kernel polynomial coefficients (cutoff {m}):");
    let kernel = convolution_kernel(m, u.order(), &params)?;
    for (i, b) in kernel.coeffs().iter().enumerate() {
        println!("  z^{}: {:.6}", i + 1, b.re);
    }

    println!();
    println!("{:>4} {:>24} {:>24}", "k", "chain", "termwise product");
    let mut residual = 0.0_f64;
    for (i, (a, b)) in chain.coeffs().iter().zip(product.coeffs()).enumerate() {
        println!(
            "{:>4} {:>24} {:>24}",
            i + 2,
            format!("{:.6}{:+.6}i", a.re, a.im),
            format!("{:.6}{:+.6}i", b.re, b.im)
        );
        residual = residual.max((a - b).norm());
    }
    println!();
    println!("max coefficient residual: {residual:.3e}");
    Ok(())
}
