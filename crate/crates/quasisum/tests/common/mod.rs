//! Helpers shared by the integration suites. The two dense scans are
//! deliberately independent of `NormalizedSeries::boundary_min_re`: one sums
//! running powers instead of Horner, the other goes through an FFT.

#![allow(dead_code)]

use num_complex::Complex64;
use quasisum::NormalizedSeries;
use rustfft::FftPlanner;

/// Minimum of `Re f` over `samples` equally spaced angles at `radius`,
/// summing explicit powers term by term.
pub fn dense_min_re(series: &NormalizedSeries, radius: f64, samples: usize) -> f64 {
    let coeffs = series.coeffs();
    let mut min = f64::INFINITY;
    for i in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (samples as f64);
        let z = Complex64::from_polar(radius, theta);
        let mut acc = Complex64::new(1.0, 0.0);
        let mut zp = z;
        for &b in coeffs {
            acc += b * zp;
            zp *= z;
        }
        if acc.re < min {
            min = acc.re;
        }
    }
    min
}

/// Minimum of `Re f` over `samples` equally spaced boundary angles, all
/// values at once as one inverse transform of the coefficient vector.
pub fn dense_min_re_fft(series: &NormalizedSeries, samples: usize) -> f64 {
    assert!(samples > series.order(), "need more samples than coefficients");
    let mut buf = vec![Complex64::new(0.0, 0.0); samples];
    buf[0] = Complex64::new(1.0, 0.0);
    buf[1..series.order()].copy_from_slice(series.coeffs());
    FftPlanner::new().plan_fft_inverse(samples).process(&mut buf);
    buf.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
}

/// Largest pointwise coefficient distance, including the implicit leading 1.
pub fn max_coeff_dist(a: &NormalizedSeries, b: &NormalizedSeries) -> f64 {
    assert_eq!(a.order(), b.order(), "comparing series of different orders");
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
