//! Seeded random draws for tests, sweeps, and examples.
//!
//! Everything here is deterministic given the generator state. Sweeps derive
//! per-cell generators from one seed via stream splitting so rows can be
//! computed in parallel without coupling their draws.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classes::KernelSpec;
use crate::operators::ClassParams;
use crate::series::NormalizedSeries;

/// Largest mixture size drawn by default; small mixtures already span the
/// needed variety of members.
pub const MIXTURE_MAX_POINTS: usize = 8;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for cell `index` under the same seed.
pub fn cell_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random mixture spec: up to `max_points` unit-circle points with weights
/// drawn flat on the simplex (normalized exponentials).
pub fn draw_kernel(rng: &mut impl Rng, max_points: usize) -> KernelSpec {
    let count = rng.gen_range(1..=max_points.max(1));
    let points = (0..count)
        .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let mut weights: Vec<f64> = (0..count)
        .map(|_| -(rng.gen_range(f64::EPSILON..1.0_f64)).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    KernelSpec::new(points, weights).expect("drawn kernel spec is valid by construction")
}

/// Parameter draw for the self-consistency suites. The derivative order is
/// kept small and `alpha` away from zero because the power lift amplifies
/// rounding noise like `k^(n + 1/2) / alpha^n` at high truncation orders.
pub fn draw_params(rng: &mut impl Rng) -> ClassParams {
    let n = rng.gen_range(0..=2);
    let alpha = rng.gen_range(0.5..3.0);
    let beta = rng.gen_range(0.0..0.9);
    let c = rng.gen_range(0.0..2.0);
    ClassParams::new(n, alpha, beta, c).expect("drawn params are valid by construction")
}

/// Parameter draw restricted to the regime where the bound applies.
pub fn draw_params_within_hypothesis(rng: &mut impl Rng) -> ClassParams {
    loop {
        let params = draw_params(rng);
        if params.within_gasper_bound() {
            return params;
        }
    }
}

/// Complex series with geometrically decaying coefficients: `|b_k|` of size
/// about `scale * rho^(k-1)`. Decay keeps downstream products and logs well
/// conditioned, so residual checks can use absolute tolerances.
pub fn draw_decaying_series(rng: &mut impl Rng, order: usize, scale: f64) -> NormalizedSeries {
    let rho = rng.gen_range(0.3..0.8);
    let mut mag = scale;
    let coeffs = (2..=order)
        .map(|_| {
            mag *= rho;
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(mag * rng.gen_range(0.5..1.0), phase)
        })
        .collect();
    NormalizedSeries::from_coeffs(coeffs)
}

/// Series with a fixed coefficient budget: random coefficients rescaled so
/// the tail 1-norm equals `norm`. With `norm < 1` the series stays zero-free
/// on the closed disk, which the log and power round-trip tests require.
pub fn draw_series_with_norm(rng: &mut impl Rng, order: usize, norm: f64) -> NormalizedSeries {
    let mut coeffs: Vec<Complex64> = (2..=order)
        .map(|_| {
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(rng.gen_range(0.0..1.0), phase)
        })
        .collect();
    let total: f64 = coeffs.iter().map(|c| c.norm()).sum();
    if total > 0.0 {
        for c in &mut coeffs {
            *c *= norm / total;
        }
    }
    NormalizedSeries::from_coeffs(coeffs)
}
