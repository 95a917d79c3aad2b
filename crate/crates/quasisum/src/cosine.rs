//! Nonnegative cosine sums and their best shift constant.
//!
//! The central object is
//!
//! ```text
//! S(theta; gamma, l) = 1/(1 + gamma) + sum_{k=1}^{l} cos(k theta)/(k + gamma)
//! ```
//!
//! which stays nonnegative for every `l` and `theta` as long as `gamma` does
//! not exceed a critical constant (Gasper's constant, about 4.5678). The
//! related power sum `sum z^k/(k + gamma)` inherits the lower bound
//! `-1/(1 + gamma)` on the closed unit disk for the same range of `gamma`.
//!
//! Both sums are even and 2*pi-periodic in `theta`, so every scan here works
//! on `[0, pi]`. Grid evaluation uses the two-term cosine recurrence, which
//! keeps a full (theta, l) sweep at O(grid * l) with no trig calls in the
//! inner loop; drift of the recurrence stays around 1e-12 for l in the
//! hundreds, far below the scan tolerances.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::series::{golden_section_min, ScanConfig};

/// Largest shift for which the cosine sums stay nonnegative for every length,
/// to the precision we rely on. Also the admissibility cap for `alpha + c`
/// in the partial-sum bound.
pub const GASPER_CONSTANT: f64 = 4.5678018;

/// A single cosine-sum evaluation request: shift `gamma > -1` and number of
/// terms `terms >= 1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CosineSumQuery {
    pub gamma: f64,
    pub terms: usize,
}

impl CosineSumQuery {
    pub fn new(gamma: f64, terms: usize) -> Result<Self> {
        check_gamma(gamma)?;
        if terms < 1 {
            return Err(Error::InvalidParameter(
                "cosine sum needs at least one term".into(),
            ));
        }
        Ok(Self { gamma, terms })
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > -1.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gamma must be finite and greater than -1, got {gamma}"
        )))
    }
}

/// Direct evaluation of `1/(1+gamma) + sum cos(k theta)/(k+gamma)`.
pub fn cosine_sum(theta: f64, query: &CosineSumQuery) -> f64 {
    let mut s = 1.0 / (1.0 + query.gamma);
    for k in 1..=query.terms {
        s += (k as f64 * theta).cos() / (k as f64 + query.gamma);
    }
    s
}

/// Same sum via the cosine recurrence; used by the scans.
fn cosine_sum_recurrence(theta: f64, gamma: f64, terms: usize) -> f64 {
    let two_cos = 2.0 * theta.cos();
    let mut prev = 1.0; // cos(0)
    let mut cur = theta.cos();
    let mut s = 1.0 / (1.0 + gamma) + cur / (1.0 + gamma);
    for k in 2..=terms {
        let next = two_cos * cur - prev;
        prev = cur;
        cur = next;
        s += cur / (k as f64 + gamma);
    }
    s
}

/// `Re sum_{k=1}^{terms} z^k/(k+gamma)` at `z = r e^(i theta)`.
fn power_sum_at(theta: f64, gamma: f64, terms: usize, r: f64) -> f64 {
    let two_cos = 2.0 * theta.cos();
    let mut prev = 1.0;
    let mut cur = theta.cos();
    let mut rp = r;
    let mut s = rp * cur / (1.0 + gamma);
    for k in 2..=terms {
        let next = two_cos * cur - prev;
        prev = cur;
        cur = next;
        rp *= r;
        s += rp * cur / (k as f64 + gamma);
    }
    s
}

/// Location and value of a scanned minimum over `(theta, terms)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CosineScanMin {
    pub value: f64,
    pub theta: f64,
    pub terms: usize,
}

/// Minimum of the cosine sum over `theta` in `[0, pi]` and every length
/// `1 <= l <= max_terms`.
///
/// The grid sweep tracks the best cell for each length separately (prefix
/// sums make this a single pass), then polishes each candidate by golden
/// section. Exact value ties resolve toward smaller `theta`, then smaller
/// length, so repeated runs are byte-identical.
pub fn cosine_sum_min(gamma: f64, max_terms: usize, scan: &ScanConfig) -> Result<CosineScanMin> {
    check_gamma(gamma)?;
    if max_terms < 1 {
        return Err(Error::InvalidParameter(
            "cosine scan needs at least one term".into(),
        ));
    }

    // indices 0..=n/2 of the full-circle grid cover [0, pi]
    let n = scan.grid_size();
    let half = n / 2;
    let lead = 1.0 / (1.0 + gamma);
    let mut best_val = vec![f64::INFINITY; max_terms + 1];
    let mut best_theta = vec![0.0f64; max_terms + 1];
    for i in 0..=half {
        let theta = PI * i as f64 / half as f64;
        let two_cos = 2.0 * theta.cos();
        let mut prev = 1.0;
        let mut cur = theta.cos();
        let mut s = lead + cur / (1.0 + gamma);
        if s < best_val[1] {
            best_val[1] = s;
            best_theta[1] = theta;
        }
        for k in 2..=max_terms {
            let next = two_cos * cur - prev;
            prev = cur;
            cur = next;
            s += cur / (k as f64 + gamma);
            if s < best_val[k] {
                best_val[k] = s;
                best_theta[k] = theta;
            }
        }
    }

    let h = PI / half as f64;
    let mut out = CosineScanMin {
        value: f64::INFINITY,
        theta: 0.0,
        terms: 1,
    };
    for l in 1..=max_terms {
        let f = |t: f64| cosine_sum_recurrence(t, gamma, l);
        let a = (best_theta[l] - h).max(0.0);
        let b = (best_theta[l] + h).min(PI);
        let (x, v) = golden_section_min(f, a, b, scan.refine_tol());
        let (val, theta) = if v < best_val[l] {
            (v, x)
        } else {
            (best_val[l], best_theta[l])
        };
        let better = val < out.value
            || (val == out.value && (theta < out.theta || (theta == out.theta && l < out.terms)));
        if better {
            out = CosineScanMin {
                value: val,
                theta,
                terms: l,
            };
        }
    }
    Ok(out)
}

/// Bisection estimate of the largest admissible shift.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GasperEstimate {
    /// Midpoint of the final bracket.
    pub constant: f64,
    /// Final bracket `(lo, hi)`; the sign of the scanned minimum changes
    /// inside it and `hi - lo <= tol`.
    pub bracket: (f64, f64),
    /// Length whose dip goes negative just above the constant.
    pub critical_terms: usize,
    /// Angle of that dip.
    pub critical_theta: f64,
}

/// Estimates the best constant by bisecting the sign of the scanned minimum
/// on the bracket `[4, 5]`. `tol` is the requested bracket width in `gamma`.
///
/// If the scanned minimum does not change sign across the starting bracket
/// (for example with `max_terms` too small to see any dip), the returned
/// error carries both endpoint minima for diagnosis.
pub fn estimate_best_constant(
    max_terms: usize,
    tol: f64,
    scan: &ScanConfig,
) -> Result<GasperEstimate> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bisection tolerance must be positive, got {tol}"
        )));
    }
    let mut lo = 4.0;
    let mut hi = 5.0;
    let f_lo = cosine_sum_min(lo, max_terms, scan)?.value;
    let f_hi = cosine_sum_min(hi, max_terms, scan)?.value;
    if !(f_lo >= 0.0 && f_hi < 0.0) {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if cosine_sum_min(mid, max_terms, scan)?.value >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let critical = cosine_sum_min(hi, max_terms, scan)?;
    Ok(GasperEstimate {
        constant: 0.5 * (lo + hi),
        bracket: (lo, hi),
        critical_terms: critical.terms,
        critical_theta: critical.theta,
    })
}

/// Minimum of `Re sum_{k=1}^{terms} z^k/(k+gamma)` over the scan circle
/// `|z| = radius`, by evenness restricted to `theta` in `[0, pi]`.
/// Returns `(min_value, argmin_angle)`.
pub fn power_sum_min(gamma: f64, terms: usize, scan: &ScanConfig) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    if terms < 1 {
        return Err(Error::InvalidParameter(
            "power sum needs at least one term".into(),
        ));
    }
    let r = scan.radius();
    let f = |t: f64| power_sum_at(t, gamma, terms, r);
    let half = scan.grid_size() / 2;
    let mut best_val = f64::INFINITY;
    let mut best_theta = 0.0;
    for i in 0..=half {
        let theta = PI * i as f64 / half as f64;
        let v = f(theta);
        if v < best_val {
            best_val = v;
            best_theta = theta;
        }
    }
    let h = PI / half as f64;
    let (x, v) = golden_section_min(
        f,
        (best_theta - h).max(0.0),
        (best_theta + h).min(PI),
        scan.refine_tol(),
    );
    if v < best_val {
        Ok((v, x))
    } else {
        Ok((best_val, best_theta))
    }
}

/// The proven floor for [`power_sum_min`] when `gamma` is admissible.
pub fn power_sum_floor(gamma: f64) -> f64 {
    -1.0 / (1.0 + gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_hand_value() {
        // theta = 2*pi/3, gamma = 1, two terms:
        // 1/2 + cos(2pi/3)/2 + cos(4pi/3)/3 = 1/2 - 1/4 - 1/6 = 1/12
        let q = CosineSumQuery::new(1.0, 2).unwrap();
        let v = cosine_sum(2.0 * PI / 3.0, &q);
        assert!((v - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn query_validation() {
        assert!(CosineSumQuery::new(-1.0, 3).is_err());
        assert!(CosineSumQuery::new(-1.5, 3).is_err());
        assert!(CosineSumQuery::new(0.0, 0).is_err());
        assert!(CosineSumQuery::new(-0.999, 1).is_ok());
    }

    #[test]
    fn evenness_and_periodicity() {
        let q = CosineSumQuery::new(2.5, 17).unwrap();
        for theta in [0.3, 1.1, 2.9] {
            assert!((cosine_sum(theta, &q) - cosine_sum(-theta, &q)).abs() < 1e-14);
            assert!((cosine_sum(theta, &q) - cosine_sum(theta + 2.0 * PI, &q)).abs() < 1e-13);
        }
    }

    #[test]
    fn recurrence_agrees_with_direct() {
        let q = CosineSumQuery::new(3.2, 200).unwrap();
        for theta in [0.05, 0.7, 1.44, 2.8, PI] {
            let direct = cosine_sum(theta, &q);
            let rec = cosine_sum_recurrence(theta, 3.2, 200);
            assert!((direct - rec).abs() < 1e-12);
        }
    }

    #[test]
    fn single_term_minimum_is_at_pi() {
        // gamma = 0, one term: (1 + cos theta), minimum 0 at pi
        let m = cosine_sum_min(0.0, 1, &ScanConfig::default()).unwrap();
        assert!(m.value.abs() < 1e-12);
        assert!((m.theta - PI).abs() < 1e-6);
        assert_eq!(m.terms, 1);
    }

    #[test]
    fn large_shift_goes_negative() {
        let m = cosine_sum_min(6.0, 200, &ScanConfig::default()).unwrap();
        assert!(m.value < 0.0);
    }

    #[test]
    fn admissible_shift_stays_nonnegative() {
        for gamma in [-0.5, 0.0, 2.0, 4.0] {
            let m = cosine_sum_min(gamma, 50, &ScanConfig::default()).unwrap();
            assert!(m.value >= -1e-12, "gamma = {gamma}: {}", m.value);
        }
    }

    #[test]
    fn best_constant_estimate() {
        let est = estimate_best_constant(200, 1e-4, &ScanConfig::default()).unwrap();
        assert!((est.constant - GASPER_CONSTANT).abs() < 1e-3);
        assert!(est.bracket.1 - est.bracket.0 <= 1e-4);
        assert!(est.bracket.0 <= est.constant && est.constant <= est.bracket.1);
        // the extremal dip lives at three terms
        assert_eq!(est.critical_terms, 3);
    }

    #[test]
    fn bracket_failure_with_one_term() {
        // a single cosine term never goes negative after the shift, so the
        // bracket cannot straddle a sign change
        let err = estimate_best_constant(1, 1e-4, &ScanConfig::default()).unwrap_err();
        assert!(matches!(err, Error::BracketFailure { .. }));
    }

    #[test]
    fn power_sum_single_term() {
        // l = 1, gamma = 1: min of r*cos(theta)/2 is -1/2 at pi for r = 1
        let (v, theta) = power_sum_min(1.0, 1, &ScanConfig::default()).unwrap();
        assert!((v + 0.5).abs() < 1e-9);
        assert!((theta - PI).abs() < 1e-6);
    }

    #[test]
    fn power_sum_respects_floor() {
        let scan = ScanConfig::default();
        for gamma in [-0.5, 0.0, 1.0, 4.5] {
            for terms in [1, 2, 5, 50] {
                let (v, _) = power_sum_min(gamma, terms, &scan).unwrap();
                assert!(
                    v >= power_sum_floor(gamma) - 1e-8,
                    "gamma = {gamma}, terms = {terms}: {v}"
                );
            }
        }
    }
}
