//! Convex hulls of boundary images and the convolution containment check.
//!
//! If `Re p > 1/2` on the disk, the coefficient-wise (Hadamard) product
//! `p (*) q` only takes values inside the convex hull of the image of `q`.
//! [`hull_membership_check`] tests that statement numerically: it builds the
//! hull of `q` sampled on the scan circle, samples `p (*) q` on a polar grid
//! of the open disk, and reports the deepest half-plane violation.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::series::{NormalizedSeries, ScanConfig};

/// Plain point in the value plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point { x: z.re, y: z.im }
    }
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Monotone-chain convex hull in counterclockwise order.
///
/// Degenerate inputs collapse rather than fail: a collinear cloud yields its
/// two extreme points, coincident points yield a single point. Only an empty
/// input is an error.
pub fn convex_hull(points: &[Point]) -> Result<Vec<Point>> {
    if points.is_empty() {
        return Err(Error::InvalidParameter(
            "convex hull of an empty point set".into(),
        ));
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(pts);
    }

    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // all hull turns were degenerate: collinear input
        return Ok(vec![pts[0], pts[pts.len() - 1]]);
    }
    Ok(lower)
}

/// Signed distance of `p` from the hull: negative inside, positive outside.
///
/// For a full polygon this is the deepest violation over supporting
/// half-planes (max over edges of the signed distance to the edge line),
/// which coincides with the usual distance for points facing an edge and
/// lower-bounds it in corner regions. Segments and single points fall back
/// to plain Euclidean distance.
pub fn signed_distance_outside(hull: &[Point], p: Point) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => ((p.x - hull[0].x).powi(2) + (p.y - hull[0].y).powi(2)).sqrt(),
        2 => segment_distance(hull[0], hull[1], p),
        _ => {
            let mut worst = f64::NEG_INFINITY;
            for i in 0..hull.len() {
                let a = hull[i];
                let b = hull[(i + 1) % hull.len()];
                let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
                // CCW interior lies to the left of a->b, where the cross
                // product is positive
                let d = -cross(a, b, p) / len;
                if d > worst {
                    worst = d;
                }
            }
            worst
        }
    }
}

fn segment_distance(a: Point, b: Point, p: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.x + t * dx, a.y + t * dy);
    ((p.x - cx).powi(2) + (p.y - cy).powi(2)).sqrt()
}

/// Disk samples stay at this fraction of the hull circle. The convolution
/// argument evaluates the factor at the *ratio* of the two radii, so the
/// factor's half-plane condition is checked on `|z| = 0.999` regardless of
/// the scan radius.
pub const CONVOLUTION_RATIO: f64 = 0.999;

/// Polar sampling of the disk for the containment check.
pub const DISK_RADII: usize = 64;
pub const DISK_ANGLES: usize = 256;

/// Boundary samples used to build the hull. Dense enough that the sampled
/// polygon hugs the true hull to well under 1e-6 for the coefficient decay
/// used in the test suites.
pub const HULL_BOUNDARY_SAMPLES: usize = 32768;

/// Slack on the `Re > 1/2` precondition so exact boundary cases (a truncated
/// half-plane mapping) are not rejected for a rounding error.
pub const PRECONDITION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    /// Whether `Re factor >= 1/2` held on the ratio circle. When false the
    /// containment statement is vacuous and `pass` is `None`, but the
    /// measured distance is still reported.
    pub precondition_ok: bool,
    /// Scanned minimum of `Re factor` on `|z| = 0.999`.
    pub factor_min_re: f64,
    /// Largest signed distance of any product sample outside the hull;
    /// negative values mean every sample stayed inside with margin.
    pub max_outside_distance: f64,
    pub hull_vertices: usize,
    pub samples: usize,
    pub pass: Option<bool>,
}

/// Checks that `factor (*) target` stays inside the convex hull of `target`'s
/// image of the scan circle. `factor` must satisfy `Re > 1/2`; that is
/// verified by scan first, and failure makes the report vacuous rather than
/// an error.
pub fn hull_membership_check(
    factor: &NormalizedSeries,
    target: &NormalizedSeries,
    scan: &ScanConfig,
    tol: f64,
) -> Result<HullReport> {
    if factor.order() != target.order() {
        return Err(Error::OrderMismatch {
            left: factor.order(),
            right: target.order(),
        });
    }

    let pre_scan = scan.with_radius(CONVOLUTION_RATIO)?;
    let (factor_min_re, _) = factor.boundary_min_re(&pre_scan);
    let precondition_ok = factor_min_re >= 0.5 - PRECONDITION_TOL;

    let hull_points: Vec<Point> = (0..HULL_BOUNDARY_SAMPLES)
        .map(|i| {
            let theta = TAU * i as f64 / HULL_BOUNDARY_SAMPLES as f64;
            target
                .eval(Complex64::from_polar(scan.radius(), theta))
                .into()
        })
        .collect();
    let hull = convex_hull(&hull_points)?;

    let product = factor.hadamard(target)?;
    let mut max_outside = f64::NEG_INFINITY;
    for j in 1..=DISK_RADII {
        let r = scan.radius() * CONVOLUTION_RATIO * j as f64 / DISK_RADII as f64;
        for i in 0..DISK_ANGLES {
            let theta = TAU * i as f64 / DISK_ANGLES as f64;
            let v = product.eval(Complex64::from_polar(r, theta));
            let d = signed_distance_outside(&hull, v.into());
            if d > max_outside {
                max_outside = d;
            }
        }
    }

    Ok(HullReport {
        precondition_ok,
        factor_min_re,
        max_outside_distance: max_outside,
        hull_vertices: hull.len(),
        samples: DISK_RADII * DISK_ANGLES,
        pass: if precondition_ok {
            Some(max_outside <= tol)
        } else {
            None
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    #[test]
    fn square_hull_is_ccw() {
        let pts = [
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
            pt(0.5, 0.5),
            pt(0.25, 0.75),
        ];
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.len(), 4);
        // counterclockwise: every consecutive triple turns left
        for i in 0..hull.len() {
            let a = hull[i];
            let b = hull[(i + 1) % hull.len()];
            let c = hull[(i + 2) % hull.len()];
            assert!(cross(a, b, c) > 0.0);
        }
    }

    #[test]
    fn collinear_cloud_collapses_to_segment() {
        let pts = [pt(0.0, 0.0), pt(0.5, 0.5), pt(2.0, 2.0), pt(1.0, 1.0)];
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull, vec![pt(0.0, 0.0), pt(2.0, 2.0)]);
    }

    #[test]
    fn degenerate_hulls() {
        assert!(convex_hull(&[]).is_err());
        assert_eq!(convex_hull(&[pt(1.0, 2.0)]).unwrap().len(), 1);
        assert_eq!(
            convex_hull(&[pt(1.0, 2.0), pt(1.0, 2.0)]).unwrap().len(),
            1
        );
    }

    #[test]
    fn inputs_stay_inside_their_hull() {
        // a deterministic scatter
        let pts: Vec<Point> = (0..300)
            .map(|i| {
                let t = i as f64;
                pt((1.7 * t).sin() * (0.3 * t).cos(), (2.3 * t).cos() * (0.7 * t).sin())
            })
            .collect();
        let hull = convex_hull(&pts).unwrap();
        for &p in &pts {
            assert!(signed_distance_outside(&hull, p) <= 1e-12);
        }
    }

    #[test]
    fn signed_distance_signs() {
        let hull = convex_hull(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0)]).unwrap();
        assert!(signed_distance_outside(&hull, pt(1.0, 1.0)) < 0.0);
        let d = signed_distance_outside(&hull, pt(3.0, 1.0));
        assert!((d - 1.0).abs() < 1e-12);
    }

    /// Half-plane factor built from a point mass on the unit circle:
    /// coefficients x^(k-1), the series of 1/(1 - x z).
    fn point_mass_factor(x: Complex64, order: usize) -> NormalizedSeries {
        let mut coeffs = Vec::with_capacity(order - 1);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 2..=order {
            p *= x;
            coeffs.push(p);
        }
        NormalizedSeries::from_coeffs(coeffs)
    }

    fn decaying_target(order: usize, support: usize) -> NormalizedSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order - 1];
        for (i, slot) in coeffs.iter_mut().enumerate().take(support) {
            let k = i as f64;
            *slot = Complex64::new(
                0.6f64.powf(k) * (1.3 * k).sin(),
                0.6f64.powf(k) * (0.9 * k).cos(),
            );
        }
        NormalizedSeries::from_coeffs(coeffs)
    }

    // The half-plane condition is only certified up to the truncation tail,
    // which at |z| = 0.999 needs orders in the thousands to die out; the
    // checks below run at 8192.

    #[test]
    fn containment_for_point_mass_factor() {
        let order = 8192;
        let x = Complex64::from_polar(1.0, 2.4);
        let factor = point_mass_factor(x, order);
        let target = decaying_target(order, 24);
        let report =
            hull_membership_check(&factor, &target, &ScanConfig::default(), 1e-6).unwrap();
        assert!(report.precondition_ok, "min re = {}", report.factor_min_re);
        assert_eq!(report.pass, Some(true));
        assert!(report.max_outside_distance <= 1e-6);
    }

    #[test]
    fn identity_factor_reproduces_target() {
        let order = 8192;
        let factor = NormalizedSeries::geometric(order);
        let target = decaying_target(order, 24);
        let product = factor.hadamard(&target).unwrap();
        assert_eq!(&product, &target);
        let report =
            hull_membership_check(&factor, &target, &ScanConfig::default(), 1e-6).unwrap();
        assert!(report.precondition_ok);
        assert!(report.max_outside_distance <= 1e-6);
    }

    #[test]
    fn vacuous_when_factor_leaves_half_plane() {
        let order = 64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order - 1];
        coeffs[0] = Complex64::new(0.9, 0.0); // Re(1 + 0.9 z) dips to ~0.1
        let factor = NormalizedSeries::from_coeffs(coeffs);
        let target = decaying_target(order, 24);
        let report =
            hull_membership_check(&factor, &target, &ScanConfig::default(), 1e-6).unwrap();
        assert!(!report.precondition_ok);
        assert_eq!(report.pass, None);
    }

    #[test]
    fn constant_target_collapses_to_a_point() {
        let order = 256;
        let factor = NormalizedSeries::geometric(order);
        let target = NormalizedSeries::one(order);
        let report =
            hull_membership_check(&factor, &target, &ScanConfig::default(), 1e-6).unwrap();
        assert_eq!(report.hull_vertices, 1);
        assert!(report.max_outside_distance <= 1e-6);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = NormalizedSeries::one(8);
        let b = NormalizedSeries::one(16);
        assert!(hull_membership_check(&a, &b, &ScanConfig::default(), 1e-6).is_err());
    }
}
