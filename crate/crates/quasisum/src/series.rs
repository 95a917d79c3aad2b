//! Truncated power-series arithmetic over complex coefficients.
//!
//! Every series here is *normalized*: the constant term is exactly 1 and is
//! never stored. A series of truncation order `M` keeps the coefficients
//! `b_2, ..., b_M` of
//!
//! ```text
//! 1 + b_2 z + b_3 z^2 + ... + b_M z^(M-1)
//! ```
//!
//! so the highest retained power is `z^(M-1)` and the coefficient vector has
//! length `M - 1`. The off-by-one convention (`b_k` sits on `z^(k-1)`) matches
//! the usual normalization of analytic functions `f(z) = z + a_2 z^2 + ...`
//! after dividing by `z`.
//!
//! All arithmetic is plain IEEE double precision; binary operations require
//! equal truncation orders and fail loudly on mismatch rather than resizing
//! silently.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedSeries {
    coeffs: Vec<Complex64>,
}

/// A truncated series with constant term exactly 0: the log-domain
/// counterpart of [`NormalizedSeries`]. Coefficients sit on `z^1 ..
/// z^(M-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSeries {
    coeffs: Vec<Complex64>,
}

impl NormalizedSeries {
    /// Builds a series of truncation order `order` from the coefficients
    /// `b_2, ..., b_M` (in that order). `coeffs.len()` must equal `order - 1`.
    pub fn new(coeffs: Vec<Complex64>, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidParameter(
                "truncation order must be at least 1".into(),
            ));
        }
        if coeffs.len() != order - 1 {
            return Err(Error::CoefficientCount {
                order,
                need: order - 1,
                got: coeffs.len(),
            });
        }
        Ok(Self { coeffs })
    }

    /// The order is implicit in the coefficient count, so this never fails.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order.saturating_sub(1)],
        }
    }

    /// Truncation of 1/(1-z): every stored coefficient is 1.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0); order.saturating_sub(1)],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Stored coefficients `b_2, ..., b_M`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `b_k` for `1 <= k <= M`, with `b_1 = 1` (the implicit
    /// constant term).
    pub fn coeff(&self, k: usize) -> Complex64 {
        assert!(k >= 1 && k <= self.order(), "coefficient index out of range");
        if k == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            self.coeffs[k - 2]
        }
    }

    fn check_same_order(&self, rhs: &Self) -> Result<()> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            })
        }
    }

    /// Full coefficient vector including the constant term, indexed by power.
    fn full(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.order());
        v.push(Complex64::new(1.0, 0.0));
        v.extend_from_slice(&self.coeffs);
        v
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let a = self.full();
        let b = rhs.full();
        let m = a.len();
        let mut out = Vec::with_capacity(m - 1);
        for j in 1..m {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..=j {
                s += a[i] * b[j - i];
            }
            out.push(s);
        }
        Ok(Self { coeffs: out })
    }

    /// Termwise (Hadamard) product. Constant terms multiply to 1.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self { coeffs })
    }

    /// Formal logarithm. Well defined because the constant term is exactly 1;
    /// uses the derivative recurrence j*w_j = j*u_j - sum_{i<j} i*w_i*u_{j-i}.
    pub fn log(&self) -> ZeroSeries {
        let u = self.full();
        let m = u.len();
        let mut w = vec![Complex64::new(0.0, 0.0); m];
        for j in 1..m {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 1..j {
                s += (i as f64) * w[i] * u[j - i];
            }
            w[j] = u[j] - s / (j as f64);
        }
        ZeroSeries {
            coeffs: w[1..].to_vec(),
        }
    }

    /// Principal power u^alpha = exp(alpha * log u). `alpha = 1` is an exact
    /// identity, not a round trip.
    pub fn pow(&self, alpha: f64) -> Self {
        if alpha == 1.0 {
            return self.clone();
        }
        self.log().scale(alpha).exp()
    }

    /// Horner evaluation of the truncated polynomial at a point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in self.coeffs[..self.effective_len()].iter().rev() {
            acc = acc * z + b;
        }
        acc * z + Complex64::new(1.0, 0.0)
    }

    /// Length of the coefficient slice with trailing exact zeros dropped.
    /// Evaluating through trailing zeros is wasted work; skipping them is
    /// bitwise identical.
    pub(crate) fn effective_len(&self) -> usize {
        let mut n = self.coeffs.len();
        while n > 0 && self.coeffs[n - 1] == Complex64::new(0.0, 0.0) {
            n -= 1;
        }
        n
    }

    /// Minimum of `Re self(r e^(i theta))` over the scan circle.
    ///
    /// Scans a uniform angular grid, then refines the best bracket by golden
    /// section down to `scan.refine_tol`. Returns `(min_value, argmin_angle)`
    /// with the angle normalized to `[0, 2*pi)`.
    pub fn boundary_min_re(&self, scan: &ScanConfig) -> (f64, f64) {
        let coeffs = &self.coeffs[..self.effective_len()];
        let r = scan.radius;
        let at = |theta: f64| -> f64 {
            let z = Complex64::from_polar(r, theta);
            let mut acc = Complex64::new(0.0, 0.0);
            for b in coeffs.iter().rev() {
                acc = acc * z + b;
            }
            (acc * z).re + 1.0
        };

        let n = scan.grid_size;
        let mut best_val = f64::INFINITY;
        let mut best_idx = 0usize;
        for i in 0..n {
            let v = at(TAU * i as f64 / n as f64);
            if v < best_val {
                best_val = v;
                best_idx = i;
            }
        }

        let h = TAU / n as f64;
        let center = TAU * best_idx as f64 / n as f64;
        let (x, v) = golden_section_min(&at, center - h, center + h, scan.refine_tol);
        if v < best_val {
            (v, x.rem_euclid(TAU))
        } else {
            (best_val, center)
        }
    }
}

impl ZeroSeries {
    pub fn new(coeffs: Vec<Complex64>, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidParameter(
                "truncation order must be at least 1".into(),
            ));
        }
        if coeffs.len() != order - 1 {
            return Err(Error::CoefficientCount {
                order,
                need: order - 1,
                got: coeffs.len(),
            });
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Coefficients on `z^1, ..., z^(M-1)`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Formal exponential, the inverse of [`NormalizedSeries::log`]:
    /// j*u_j = sum_{i<=j} i*w_i*u_{j-i} with u_0 = 1.
    pub fn exp(&self) -> NormalizedSeries {
        let m = self.order();
        let mut w = Vec::with_capacity(m);
        w.push(Complex64::new(0.0, 0.0));
        w.extend_from_slice(&self.coeffs);
        let mut u = vec![Complex64::new(0.0, 0.0); m];
        u[0] = Complex64::new(1.0, 0.0);
        for j in 1..m {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 1..=j {
                s += (i as f64) * w[i] * u[j - i];
            }
            u[j] = s / (j as f64);
        }
        NormalizedSeries {
            coeffs: u[1..].to_vec(),
        }
    }
}

/// Boundary-scan resolution. `radius` is the scan circle; polynomials that
/// are exact objects scan on the closed disk (radius 1), anything carrying
/// truncation error should stay strictly inside.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanConfig {
    grid_size: usize,
    refine_tol: f64,
    radius: f64,
}

impl ScanConfig {
    pub const DEFAULT_GRID: usize = 4096;
    pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

    pub fn new(grid_size: usize, refine_tol: f64, radius: f64) -> Result<Self> {
        if grid_size < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid size {grid_size} is below the minimum of 16"
            )));
        }
        if !(refine_tol > 0.0 && refine_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "refine tolerance {refine_tol} must lie in (0, 1)"
            )));
        }
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "scan radius {radius} must lie in (0, 1]"
            )));
        }
        Ok(Self {
            grid_size,
            refine_tol,
            radius,
        })
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.grid_size, self.refine_tol, radius)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn refine_tol(&self) -> f64 {
        self.refine_tol
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            grid_size: Self::DEFAULT_GRID,
            refine_tol: Self::DEFAULT_REFINE_TOL,
            radius: 1.0,
        }
    }
}

/// Golden-section minimization on `[a, b]`, assuming the bracket was chosen
/// so the minimum is interior (or at worst on an endpoint, which the caller
/// compares against separately). Returns `(argmin, min)` over all evaluated
/// points, so the result never exceeds the true minimum by more than the
/// bracket's final width allows.
pub(crate) fn golden_section_min<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (mut bx, mut bf) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if f1 < bf {
            bx = x1;
            bf = f1;
        }
        if f2 < bf {
            bx = x2;
            bf = f2;
        }
    }
    (bx, bf)
}
