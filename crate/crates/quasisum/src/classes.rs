//! Construction and testing of class members.
//!
//! Members are built constructively: a finite Herglotz mixture gives a
//! function `h` with positive real part, and inverting the defining
//! coefficient condition turns `h` into a function whose transformed series
//! has real part exceeding `beta` by design. Membership of an arbitrary
//! series is then estimated by running the transform pipeline forward and
//! scanning the boundary.
//!
//! Truncation matters here. A truncated Herglotz kernel only keeps its
//! positive real part where the dropped geometric tail is small, roughly
//! `radius^order <= (1 - radius)/2`. Scans close to the boundary therefore
//! need generous truncation orders; the default membership radius of 0.999
//! wants orders in the thousands, and tests that keep `order = 64` scan at
//! 0.9 instead.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{power_drop, power_lift, salagean, ClassParams};
use crate::series::{NormalizedSeries, ScanConfig};

/// Tolerance for unit-modulus points and weight normalization in a kernel
/// spec, and the default slack when comparing a scanned infimum to `beta`.
pub const KERNEL_TOL: f64 = 1e-12;
pub const MEMBERSHIP_TOL: f64 = 1e-6;

/// Default scan for membership questions: full grid, radius strictly inside
/// the disk because the scanned series carry truncation error.
pub fn membership_scan() -> ScanConfig {
    ScanConfig::new(
        ScanConfig::DEFAULT_GRID,
        ScanConfig::DEFAULT_REFINE_TOL,
        0.999,
    )
    .expect("membership scan constants are valid")
}

/// A finite mixture of rotations of the half-plane kernel: unit-modulus
/// points `x_j` with positive weights summing to 1.
#[derive(Clone, Debug, Serialize)]
pub struct KernelSpec {
    #[serde(serialize_with = "crate::io::complex_vec::serialize")]
    points: Vec<Complex64>,
    weights: Vec<f64>,
}

impl KernelSpec {
    pub fn new(points: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "kernel spec needs at least one point".into(),
            ));
        }
        if points.len() != weights.len() {
            return Err(Error::InvalidParameter(format!(
                "kernel spec has {} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        for (j, x) in points.iter().enumerate() {
            if (x.norm() - 1.0).abs() > KERNEL_TOL {
                return Err(Error::InvalidParameter(format!(
                    "kernel point {j} has modulus {} (must be 1)",
                    x.norm()
                )));
            }
        }
        for (j, w) in weights.iter().enumerate() {
            if !(*w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "kernel weight {j} is {w} (must be positive)"
                )));
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > KERNEL_TOL {
            return Err(Error::InvalidParameter(format!(
                "kernel weights sum to {total} (must be 1)"
            )));
        }
        Ok(Self { points, weights })
    }

    /// The single-point mass at `x = 1`: the plain half-plane kernel.
    pub fn default_point_mass() -> Self {
        Self {
            points: vec![Complex64::new(1.0, 0.0)],
            weights: vec![1.0],
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Truncated series of `sum_j w_j (1 + x_j z)/(1 - x_j z)`: real part
/// positive on the disk (up to truncation tail), constant term 1. The stored
/// coefficient on `z^(k-1)` is `2 sum_j w_j x_j^(k-1)`.
pub fn caratheodory_mixture(spec: &KernelSpec, order: usize) -> NormalizedSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order.saturating_sub(1)];
    for (x, w) in spec.points.iter().zip(&spec.weights) {
        let mut p = Complex64::new(1.0, 0.0);
        for slot in coeffs.iter_mut() {
            p *= x;
            *slot += 2.0 * w * p;
        }
    }
    NormalizedSeries::from_coeffs(coeffs)
}

/// Factor with real part above one half (up to truncation tail): the
/// mixture shifted halfway toward the constant 1. These are the admissible
/// left factors of the convolution hull check; the point mass at `x = 1`
/// gives the truncated geometric series, the termwise identity.
pub fn half_plane_factor(spec: &KernelSpec, order: usize) -> NormalizedSeries {
    let h = caratheodory_mixture(spec, order);
    NormalizedSeries::from_coeffs(h.coeffs().iter().map(|b| b * 0.5).collect())
}

/// Builds `f/z` for a class member by inverting the defining condition.
///
/// With `h` the mixture above and `p = (1 + h)/2`, the lifted coefficients
/// are `a_k = 2 (1 - beta) p_(k-1) (alpha/(alpha + k - 1))^n`, and `f/z` is
/// the `1/alpha` power of that series. By construction the transformed
/// series equals `beta + (1 - beta) h`, so its real part exceeds `beta`
/// wherever the truncation tail is negligible.
pub fn generate_member(
    spec: &KernelSpec,
    params: &ClassParams,
    order: usize,
) -> Result<NormalizedSeries> {
    let h = caratheodory_mixture(spec, order);
    let lead = 1.0 - params.beta();
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, hk)| {
            let k = i + 2;
            let damp = (params.alpha() / (params.alpha() + (k - 1) as f64)).powi(params.n() as i32);
            hk * lead * damp
        })
        .collect();
    let lifted = NormalizedSeries::from_coeffs(coeffs);
    power_drop(&lifted, params.alpha())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MembershipReport {
    pub infimum: f64,
    pub argmin_angle: f64,
    pub beta_threshold: f64,
    pub is_member: bool,
}

/// Scans the class condition for `f/z`: lifts to the `alpha` power, applies
/// the differential weights, and minimizes the real part on the scan circle.
pub fn membership_infimum(
    f_over_z: &NormalizedSeries,
    params: &ClassParams,
    scan: &ScanConfig,
    tol: f64,
) -> Result<MembershipReport> {
    let lifted = power_lift(f_over_z, params.alpha())?;
    let quantity = salagean(&lifted, params.n(), params.alpha())?;
    let (infimum, argmin_angle) = quantity.boundary_min_re(scan);
    Ok(MembershipReport {
        infimum,
        argmin_angle,
        beta_threshold: params.beta(),
        is_member: infimum >= params.beta() - tol,
    })
}

/// Convenience verdict using the default membership scan.
pub fn is_member(f_over_z: &NormalizedSeries, params: &ClassParams, tol: f64) -> Result<bool> {
    Ok(membership_infimum(f_over_z, params, &membership_scan(), tol)?.is_member)
}
