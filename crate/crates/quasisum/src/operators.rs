//! Coefficient-level operators on normalized series.
//!
//! Everything in this module acts diagonally on coefficients (each `b_k` is
//! scaled by a weight depending only on `k`), except for the power lift/drop
//! pair which goes through the formal log/exp. Diagonal maps preserve the
//! truncation order exactly; no operation here changes `M`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cosine::GASPER_CONSTANT;
use crate::error::{Error, Result};
use crate::series::NormalizedSeries;

/// Parameter bundle for the function classes under study: differential order
/// `n`, power `alpha`, class level `beta`, integral shift `c`.
///
/// Validity: `alpha > 0`, `0 <= beta < 1`, `alpha + c > 0`. Whether
/// `alpha + c` also satisfies the cosine-sum hypothesis (`<=` the Gasper
/// constant) is a separate question answered by [`ClassParams::within_gasper_bound`];
/// parameters outside that range are still constructible, the main bound just
/// makes no claim for them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassParams {
    n: u32,
    alpha: f64,
    beta: f64,
    c: f64,
}

impl ClassParams {
    pub fn new(n: u32, alpha: f64, beta: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in [0, 1), got {beta}"
            )));
        }
        if !c.is_finite() || !(alpha + c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha + c must be positive, got alpha = {alpha}, c = {c}"
            )));
        }
        Ok(Self { n, alpha, beta, c })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// True when `alpha + c` is small enough for the cosine-sum machinery
    /// behind the partial-sum bound to apply.
    pub fn within_gasper_bound(&self) -> bool {
        self.alpha + self.c <= GASPER_CONSTANT
    }
}

/// `(f/z) -> (f/z)^alpha`, the series representing `f^alpha / z^alpha`.
pub fn power_lift(f_over_z: &NormalizedSeries, alpha: f64) -> Result<NormalizedSeries> {
    check_alpha(alpha)?;
    Ok(f_over_z.pow(alpha))
}

/// Inverse of [`power_lift`]: recovers `f/z` from `f^alpha / z^alpha`.
pub fn power_drop(lifted: &NormalizedSeries, alpha: f64) -> Result<NormalizedSeries> {
    check_alpha(alpha)?;
    Ok(lifted.pow(1.0 / alpha))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha must be positive and finite, got {alpha}"
        )))
    }
}

/// Weight applied to `b_k` by `n` applications of the normalized
/// differential operator: ((alpha + k - 1) / alpha)^n.
pub fn salagean_weight(k: usize, n: u32, alpha: f64) -> f64 {
    ((alpha + (k - 1) as f64) / alpha).powi(n as i32)
}

/// Normalized Salagean-type differential operator of order `n`. On the
/// monomial convention used here it multiplies `b_k` by
/// `((alpha + k - 1)/alpha)^n`; `n = 0` is the identity.
pub fn salagean(u: &NormalizedSeries, n: u32, alpha: f64) -> Result<NormalizedSeries> {
    check_alpha(alpha)?;
    Ok(diagonal(u, |k| salagean_weight(k, n, alpha)))
}

/// Weight applied to `b_k` by the generalized integral transform:
/// (alpha + c) / (alpha + k + c - 1).
pub fn bernardi_weight(k: usize, alpha: f64, c: f64) -> f64 {
    (alpha + c) / (alpha + k as f64 + c - 1.0)
}

/// Generalized Bernardi integral in coefficient form. The classical choices
/// are `alpha = 1, c = 1` (weights 2/(k+1)) and `alpha = 1, c = 0`
/// (weights 1/k).
pub fn bernardi(u: &NormalizedSeries, alpha: f64, c: f64) -> Result<NormalizedSeries> {
    check_alpha(alpha)?;
    if !(alpha + c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha + c must be positive, got alpha = {alpha}, c = {c}"
        )));
    }
    Ok(diagonal(u, |k| bernardi_weight(k, alpha, c)))
}

/// Keeps `b_2, ..., b_m` and zeroes everything above. `m = M` is the
/// identity; `m = 1` leaves only the constant term.
pub fn quasi_partial_sum(u: &NormalizedSeries, m: usize) -> Result<NormalizedSeries> {
    if m < 1 || m > u.order() {
        return Err(Error::InvalidParameter(format!(
            "partial-sum cutoff m = {m} must lie in [1, {}]",
            u.order()
        )));
    }
    let coeffs = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            // index i holds b_(i+2)
            if i + 2 <= m {
                *b
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(NormalizedSeries::from_coeffs(coeffs))
}

/// Extracts the Caratheodory factor of a lifted series: the normalized
/// function whose real part exceeds 1/2 exactly when the underlying function
/// belongs to the class. Coefficient-wise,
/// `b_k -> ((alpha + k - 1)/alpha)^n * b_k / (2 (1 - beta))`.
pub fn caratheodory_factor(lifted: &NormalizedSeries, params: &ClassParams) -> NormalizedSeries {
    let scale = 1.0 / (2.0 * (1.0 - params.beta));
    diagonal(lifted, |k| {
        salagean_weight(k, params.n, params.alpha) * scale
    })
}

/// The fixed convolution kernel that carries the integral weights of a
/// partial sum of cutoff `m`:
///
/// ```text
/// 1 + 2 (1 - beta) * sum_{k=2}^{m} (alpha + c)/(alpha + c + k - 1) z^(k-1)
/// ```
///
/// padded with zeros up to truncation order `order`. Taking the Hadamard
/// product of [`caratheodory_factor`] with this kernel reproduces the full
/// transform pipeline (integral, cutoff at `m`, differential operator).
pub fn convolution_kernel(m: usize, order: usize, params: &ClassParams) -> Result<NormalizedSeries> {
    if m < 1 || m > order {
        return Err(Error::InvalidParameter(format!(
            "kernel cutoff m = {m} must lie in [1, {order}]"
        )));
    }
    let lead = 2.0 * (1.0 - params.beta);
    let coeffs = (2..=order)
        .map(|k| {
            if k <= m {
                Complex64::new(lead * bernardi_weight(k, params.alpha, params.c), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(NormalizedSeries::from_coeffs(coeffs))
}

fn diagonal<F: Fn(usize) -> f64>(u: &NormalizedSeries, weight: F) -> NormalizedSeries {
    let coeffs = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, b)| b * weight(i + 2))
        .collect();
    NormalizedSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_validation() {
        assert!(ClassParams::new(1, 1.0, 0.25, 1.0).is_ok());
        assert!(ClassParams::new(0, 0.0, 0.25, 1.0).is_err());
        assert!(ClassParams::new(0, -1.0, 0.25, 1.0).is_err());
        assert!(ClassParams::new(0, 1.0, 1.0, 1.0).is_err());
        assert!(ClassParams::new(0, 1.0, -0.1, 1.0).is_err());
        assert!(ClassParams::new(0, 1.0, 0.5, -1.0).is_err());
        // alpha + c > 0 admits negative c
        assert!(ClassParams::new(0, 2.0, 0.5, -1.5).is_ok());
    }

    #[test]
    fn gasper_bound_flag() {
        assert!(ClassParams::new(1, 1.0, 0.25, 1.0)
            .unwrap()
            .within_gasper_bound());
        assert!(!ClassParams::new(1, 2.0, 0.25, 3.0)
            .unwrap()
            .within_gasper_bound());
    }

    #[test]
    fn salagean_first_order_is_derivative_weighting() {
        // f = z + z^2, n = 1, alpha = 1: f/z = 1 + z maps to 1 + 2z = f'
        let u = NormalizedSeries::from_coeffs(vec![c64(1.0, 0.0)]);
        let d = salagean(&u, 1, 1.0).unwrap();
        assert_eq!(d.coeff(2), c64(2.0, 0.0));

        // n = 0 is the identity
        assert_eq!(salagean(&u, 0, 1.0).unwrap(), u);
    }

    #[test]
    fn salagean_weight_example() {
        // n = 2, alpha = 2, k = 3: ((2 + 2)/2)^2 = 4
        assert_eq!(salagean_weight(3, 2, 2.0), 4.0);
    }

    #[test]
    fn salagean_semigroup() {
        let u = NormalizedSeries::from_coeffs(vec![c64(0.7, 0.1); 31]);
        let a = salagean(&salagean(&u, 2, 1.5).unwrap(), 3, 1.5).unwrap();
        let b = salagean(&u, 5, 1.5).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            // weights reach ~1e9 here, so compare relatively
            assert!((x - y).norm() <= 1e-12 * y.norm().max(1.0));
        }
    }

    #[test]
    fn bernardi_classical_weights() {
        for k in 2..=64 {
            assert!((bernardi_weight(k, 1.0, 1.0) - 2.0 / (k as f64 + 1.0)).abs() < 1e-15);
            assert!((bernardi_weight(k, 1.0, 0.0) - 1.0 / k as f64).abs() < 1e-15);
        }
        // alpha = 1, c = 1, k = 2 gives 2/3
        assert!((bernardi_weight(2, 1.0, 1.0) - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn bernardi_rejects_bad_shift() {
        let u = NormalizedSeries::one(4);
        assert!(bernardi(&u, 1.0, -1.0).is_err());
        assert!(bernardi(&u, 1.0, -0.5).is_ok());
    }

    #[test]
    fn quasi_partial_sum_edges() {
        let u = NormalizedSeries::from_coeffs(vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0)]);
        // m = M is the identity
        assert_eq!(quasi_partial_sum(&u, 4).unwrap(), u);
        // m = 1 keeps only the constant
        assert_eq!(quasi_partial_sum(&u, 1).unwrap(), NormalizedSeries::one(4));
        // m = 2 keeps b_2
        let t = quasi_partial_sum(&u, 2).unwrap();
        assert_eq!(t.coeffs(), &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        // idempotent
        assert_eq!(quasi_partial_sum(&t, 2).unwrap(), t);
        // out of range
        assert!(quasi_partial_sum(&u, 0).is_err());
        assert!(quasi_partial_sum(&u, 5).is_err());
    }

    #[test]
    fn truncation_commutes_with_integral_weights() {
        let u = NormalizedSeries::from_coeffs(vec![c64(1.0, 2.0), c64(-0.5, 0.25), c64(0.1, 0.0)]);
        let a = quasi_partial_sum(&bernardi(&u, 1.5, 0.5).unwrap(), 3).unwrap();
        let b = bernardi(&quasi_partial_sum(&u, 3).unwrap(), 1.5, 0.5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn diagonal_maps_are_linear() {
        let u = NormalizedSeries::from_coeffs(vec![c64(0.4, -0.2), c64(0.3, 0.9)]);
        let v = NormalizedSeries::from_coeffs(vec![c64(-1.1, 0.6), c64(0.05, 0.0)]);
        let (s, t) = (0.3, 0.7);
        let mixed = NormalizedSeries::from_coeffs(
            u.coeffs()
                .iter()
                .zip(v.coeffs())
                .map(|(a, b)| a * s + b * t)
                .collect(),
        );
        let lhs = bernardi(&mixed, 2.0, 0.5).unwrap();
        let ua = bernardi(&u, 2.0, 0.5).unwrap();
        let va = bernardi(&v, 2.0, 0.5).unwrap();
        for ((l, a), b) in lhs.coeffs().iter().zip(ua.coeffs()).zip(va.coeffs()) {
            assert!((l - (a * s + b * t)).norm() < 1e-15);
        }
    }

    #[test]
    fn lift_drop_round_trip() {
        let u = NormalizedSeries::from_coeffs(vec![
            c64(0.3, 0.05),
            c64(-0.12, 0.08),
            c64(0.02, -0.01),
        ]);
        for alpha in [0.5, 1.0, 2.0, 3.7] {
            let back = power_drop(&power_lift(&u, alpha).unwrap(), alpha).unwrap();
            let dist = u
                .coeffs()
                .iter()
                .zip(back.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dist < 1e-13, "alpha = {alpha}, dist = {dist:e}");
        }
        assert!(power_lift(&u, 0.0).is_err());
        assert!(power_lift(&u, -2.0).is_err());
    }

    #[test]
    fn caratheodory_factor_of_half_plane_derivative() {
        // With n = alpha = 1, beta = 0 and f' = (1+z)/(1-z), i.e.
        // b_k = 2/k on f/z, the factor is the truncated 1/(1-z).
        let order = 16;
        let u = NormalizedSeries::from_coeffs(
            (2..=order).map(|k| c64(2.0 / k as f64, 0.0)).collect(),
        );
        let params = ClassParams::new(1, 1.0, 0.0, 1.0).unwrap();
        let p = caratheodory_factor(&u, &params);
        for b in p.coeffs() {
            assert!((b - c64(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn convolution_kernel_values() {
        // alpha = 1, c = 1, beta = 1/4: coefficient on z is 2*(3/4)*(2/3) = 1
        let params = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let q = convolution_kernel(4, 8, &params).unwrap();
        assert!((q.coeff(2) - c64(1.0, 0.0)).norm() < 1e-15);
        // zero beyond the cutoff
        for k in 5..=8 {
            assert_eq!(q.coeff(k), c64(0.0, 0.0));
        }
        // m = 1 gives the constant series
        let q1 = convolution_kernel(1, 8, &params).unwrap();
        assert_eq!(q1, NormalizedSeries::one(8));
    }

    #[test]
    fn kernel_approaches_one_as_beta_tends_to_one() {
        let near = ClassParams::new(1, 1.0, 1.0 - 1e-12, 1.0).unwrap();
        let q = convolution_kernel(8, 8, &near).unwrap();
        for b in q.coeffs() {
            assert!(b.norm() < 1e-11);
        }
    }

    #[test]
    fn factorization_identity_spot_check() {
        // pipeline bernardi -> cutoff -> salagean equals factor (*) kernel
        let u = NormalizedSeries::from_coeffs(vec![
            c64(0.5, 0.3),
            c64(-0.2, 0.1),
            c64(0.07, -0.02),
            c64(0.01, 0.004),
        ]);
        let params = ClassParams::new(2, 1.5, 0.3, 0.5).unwrap();
        let m = 3;
        let pipeline = salagean(
            &quasi_partial_sum(&bernardi(&u, params.alpha(), params.c()).unwrap(), m).unwrap(),
            params.n(),
            params.alpha(),
        )
        .unwrap();
        let product = caratheodory_factor(&u, &params)
            .hadamard(&convolution_kernel(m, u.order(), &params).unwrap())
            .unwrap();
        for (a, b) in pipeline.coeffs().iter().zip(product.coeffs()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
