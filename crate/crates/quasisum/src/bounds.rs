//! The partial-sum lower bound: closed form, single-case verification,
//! parameter sweeps, and tightness probes.
//!
//! The chain under study is: lift `f/z` to the `alpha` power, apply the
//! integral weights, cut the series off at index `m`, apply the differential
//! weights, and take the real part. For class members this quantity stays
//! above `1 - 2 (1 - beta) g / (g + 1)` with `g = alpha + c`, provided `g`
//! does not exceed the critical cosine-sum constant. Verification runs the
//! chain numerically and compares the scanned boundary minimum against the
//! closed form.

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{generate_member, KernelSpec};
use crate::error::{Error, Result};
use crate::operators::{
    bernardi, caratheodory_factor, convolution_kernel, power_lift, quasi_partial_sum, salagean,
    ClassParams,
};
use crate::sampling::{cell_rng, draw_kernel, seeded_rng, MIXTURE_MAX_POINTS};
use crate::series::{NormalizedSeries, ScanConfig};

/// Default slack when comparing a scanned minimum against the closed-form
/// bound. Boundary scans and truncation tails dominate the error, so this is
/// far looser than coefficient-level tolerances.
pub const VERIFY_TOL: f64 = 1e-6;

/// Coefficient identities have no scan error; the residual check uses this.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Closed-form lower bound for the partial-sum quantity:
/// `1 - 2 (1 - beta) (alpha + c) / (alpha + c + 1)`.
pub fn lower_bound(params: &ClassParams) -> f64 {
    let g = params.alpha() + params.c();
    1.0 - 2.0 * (1.0 - params.beta()) * g / (g + 1.0)
}

/// Smallest `beta` for which [`lower_bound`] is nonnegative:
/// `(alpha + c - 1) / (2 (alpha + c))`.
pub fn nonnegativity_threshold(params: &ClassParams) -> f64 {
    let g = params.alpha() + params.c();
    (g - 1.0) / (2.0 * g)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerificationReport {
    pub params: ClassParams,
    pub m: usize,
    pub truncation_order: usize,
    pub bound: f64,
    pub observed_min: f64,
    pub argmin_angle: f64,
    pub margin: f64,
    pub hypothesis_ok: bool,
    /// `None` when the parameters sit outside the hypothesis: the bound
    /// makes no claim there, so neither pass nor fail applies.
    pub pass: Option<bool>,
    /// Largest coefficient deviation between the transform chain and its
    /// Hadamard factorization; a pure consistency diagnostic.
    pub factorization_residual: f64,
}

/// Runs the transform chain on `f/z`, scans the boundary minimum, and
/// compares it against the closed-form bound. Requires `2 <= m <= order`;
/// a cutoff of 1 leaves only the constant term and verifies nothing.
pub fn verify(
    f_over_z: &NormalizedSeries,
    params: &ClassParams,
    m: usize,
    scan: &ScanConfig,
    tol: f64,
) -> Result<VerificationReport> {
    if m < 2 || m > f_over_z.order() {
        return Err(Error::InvalidParameter(format!(
            "cutoff m = {m} must lie in [2, {}]",
            f_over_z.order()
        )));
    }
    let lifted = power_lift(f_over_z, params.alpha())?;
    let integrated = bernardi(&lifted, params.alpha(), params.c())?;
    let truncated = quasi_partial_sum(&integrated, m)?;
    let quantity = salagean(&truncated, params.n(), params.alpha())?;

    let product = caratheodory_factor(&lifted, params)
        .hadamard(&convolution_kernel(m, lifted.order(), params)?)?;
    let factorization_residual = quantity
        .coeffs()
        .iter()
        .zip(product.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let (observed_min, argmin_angle) = quantity.boundary_min_re(scan);
    let bound = lower_bound(params);
    let margin = observed_min - bound;
    let hypothesis_ok = params.within_gasper_bound();
    Ok(VerificationReport {
        params: *params,
        m,
        truncation_order: f_over_z.order(),
        bound,
        observed_min,
        argmin_angle,
        margin,
        hypothesis_ok,
        pass: hypothesis_ok.then(|| margin >= -tol),
        factorization_residual,
    })
}

/// One parameter/cutoff combination of a sweep grid.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepCell {
    pub params: ClassParams,
    pub m: usize,
}

/// One verification row of a sweep: which cell and member draw produced it,
/// plus either the report numbers or an error message.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub cell: usize,
    pub draw: usize,
    pub params: ClassParams,
    pub m: usize,
    pub bound: f64,
    pub observed_min: f64,
    pub argmin_angle: f64,
    pub margin: f64,
    pub residual: f64,
    pub pass: Option<bool>,
    pub error: Option<String>,
}

/// Verifies `spec_count` random members per cell, in parallel over cells.
/// Emits one row per (cell, draw), ordered as the input grid.
///
/// Cell `i` draws from stream `i` of the seeded generator, so results do not
/// depend on scheduling and adding cells never changes earlier rows. A draw
/// whose verification errors (for example a cutoff beyond the truncation
/// order) reports the message in its row instead of poisoning the sweep.
pub fn sweep(
    cells: &[SweepCell],
    spec_count: usize,
    seed: u64,
    order: usize,
    scan: &ScanConfig,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    if cells.is_empty() {
        return Err(Error::InvalidParameter("sweep grid has no cells".into()));
    }
    if spec_count == 0 {
        return Err(Error::InvalidParameter(
            "sweep needs at least one member draw per cell".into(),
        ));
    }
    let nested: Vec<Vec<SweepRow>> = cells
        .par_iter()
        .enumerate()
        .map(|(index, cell)| run_cell(cell, index, spec_count, seed, order, scan, tol))
        .collect();
    Ok(nested.into_iter().flatten().collect())
}

fn run_cell(
    cell: &SweepCell,
    index: usize,
    spec_count: usize,
    seed: u64,
    order: usize,
    scan: &ScanConfig,
    tol: f64,
) -> Vec<SweepRow> {
    let mut rng = cell_rng(seed, index as u64);
    (0..spec_count)
        .map(|draw| {
            let spec = draw_kernel(&mut rng, MIXTURE_MAX_POINTS);
            let outcome = generate_member(&spec, &cell.params, order)
                .and_then(|f| verify(&f, &cell.params, cell.m, scan, tol));
            match outcome {
                Ok(report) => SweepRow {
                    cell: index,
                    draw,
                    params: cell.params,
                    m: cell.m,
                    bound: report.bound,
                    observed_min: report.observed_min,
                    argmin_angle: report.argmin_angle,
                    margin: report.margin,
                    residual: report.factorization_residual,
                    pass: report.pass,
                    error: None,
                },
                Err(err) => SweepRow {
                    cell: index,
                    draw,
                    params: cell.params,
                    m: cell.m,
                    bound: lower_bound(&cell.params),
                    observed_min: f64::NAN,
                    argmin_angle: f64::NAN,
                    margin: f64::NAN,
                    residual: f64::NAN,
                    pass: None,
                    error: Some(err.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport {
    pub params: ClassParams,
    pub m: usize,
    pub truncation_order: usize,
    pub bound: f64,
    /// Smallest boundary minimum achieved by any probed member.
    pub best_min: f64,
    pub best_angle: f64,
    /// `best_min - bound`: how much slack the bound leaves at these
    /// parameters. Small means some member nearly attains the bound.
    pub min_margin: f64,
    pub probes: usize,
    /// The mixture whose member achieved `best_min`.
    pub witness: KernelSpec,
}

/// Searches for members that push the quantity down toward the bound. The
/// single-point mass at `x = 1` is always probed first (it is the extremal
/// candidate); `budget` further random mixtures follow.
pub fn tightness_probe(
    params: &ClassParams,
    m: usize,
    order: usize,
    scan: &ScanConfig,
    budget: usize,
    seed: u64,
) -> Result<TightnessReport> {
    let mut rng = seeded_rng(seed);
    let mut best: Option<(VerificationReport, KernelSpec)> = None;
    for i in 0..=budget {
        let spec = if i == 0 {
            KernelSpec::default_point_mass()
        } else {
            draw_kernel(&mut rng, MIXTURE_MAX_POINTS)
        };
        let f = generate_member(&spec, params, order)?;
        let report = verify(&f, params, m, scan, VERIFY_TOL)?;
        if best
            .as_ref()
            .map_or(true, |(b, _)| report.observed_min < b.observed_min)
        {
            best = Some((report, spec));
        }
    }
    let (best, witness) = best.expect("at least the point mass is probed");
    Ok(TightnessReport {
        params: *params,
        m,
        truncation_order: order,
        bound: best.bound,
        best_min: best.observed_min,
        best_angle: best.argmin_angle,
        min_margin: best.observed_min - best.bound,
        probes: budget + 1,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosine::GASPER_CONSTANT;
    use num_complex::Complex64;

    #[test]
    fn bound_closed_form_examples() {
        // alpha = 2, c = 1, beta = 1/2: 1 - 2 * (1/2) * 3/4 = 1/4 exactly
        let p = ClassParams::new(0, 2.0, 0.5, 1.0).unwrap();
        assert_eq!(lower_bound(&p), 0.25);
        // beta = 0 pushes the bound negative once alpha + c > 1
        let q = ClassParams::new(0, 1.0, 0.0, 1.0).unwrap();
        assert!((lower_bound(&q) - (-1.0 / 3.0)).abs() < 1e-15);
        // c = 0 collapses the bound to beta itself
        for beta in [0.0, 0.3, 0.6] {
            let r = ClassParams::new(1, 1.0, beta, 0.0).unwrap();
            assert!((lower_bound(&r) - beta).abs() < 1e-15);
        }
    }

    #[test]
    fn threshold_marks_sign_change() {
        // alpha = c = 1: threshold is exactly 1/4
        let p = ClassParams::new(1, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(nonnegativity_threshold(&p), 0.25);
        // bound vanishes exactly at the threshold
        let at = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        assert!(lower_bound(&at).abs() < 1e-15);
        let above = ClassParams::new(1, 1.0, 0.26, 1.0).unwrap();
        let below = ClassParams::new(1, 1.0, 0.24, 1.0).unwrap();
        assert!(lower_bound(&above) > 0.0);
        assert!(lower_bound(&below) < 0.0);
        // sign of the bound matches the threshold comparison on a beta grid
        for i in 0..100 {
            let beta = i as f64 / 100.0;
            let q = ClassParams::new(1, 1.3, beta, 0.9).unwrap();
            let sign_matches = (lower_bound(&q) >= 0.0) == (beta >= nonnegativity_threshold(&q));
            assert!(sign_matches, "beta = {beta}");
        }
    }

    #[test]
    fn verify_validates_cutoff() {
        let f = NormalizedSeries::one(8);
        let p = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let scan = ScanConfig::default();
        assert!(verify(&f, &p, 1, &scan, VERIFY_TOL).is_err());
        assert!(verify(&f, &p, 9, &scan, VERIFY_TOL).is_err());
        assert!(verify(&f, &p, 8, &scan, VERIFY_TOL).is_ok());
    }

    #[test]
    fn trivial_input_has_unit_quantity() {
        // f = z: every transform fixes the constant series, margin = 1 - bound
        let f = NormalizedSeries::one(16);
        let p = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let report = verify(&f, &p, 8, &ScanConfig::default(), VERIFY_TOL).unwrap();
        assert!((report.observed_min - 1.0).abs() < 1e-12);
        assert_eq!(report.pass, Some(true));
        assert!(report.factorization_residual < RESIDUAL_TOL);
    }

    #[test]
    fn generated_member_clears_bound_on_closed_disk() {
        // mixtures of rotated kernels keep the partial-sum quantity above
        // the bound at radius 1 for every cutoff, truncation tails included
        let spec = KernelSpec::new(
            vec![
                Complex64::from_polar(1.0, 0.3),
                Complex64::from_polar(1.0, -2.1),
            ],
            vec![0.45, 0.55],
        )
        .unwrap();
        let p = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let f = generate_member(&spec, &p, 64).unwrap();
        let scan = ScanConfig::default();
        for m in [2, 3, 7, 32, 64] {
            let report = verify(&f, &p, m, &scan, VERIFY_TOL).unwrap();
            assert_eq!(report.pass, Some(true), "m = {m}: margin {}", report.margin);
            assert!(report.factorization_residual < RESIDUAL_TOL);
        }
    }

    #[test]
    fn full_cutoff_matches_untruncated_chain() {
        let spec = KernelSpec::default_point_mass();
        let p = ClassParams::new(2, 1.5, 0.3, 0.5).unwrap();
        let f = generate_member(&spec, &p, 48).unwrap();
        let scan = ScanConfig::default();
        let report = verify(&f, &p, 48, &scan, VERIFY_TOL).unwrap();
        let lifted = power_lift(&f, p.alpha()).unwrap();
        let direct = salagean(
            &bernardi(&lifted, p.alpha(), p.c()).unwrap(),
            p.n(),
            p.alpha(),
        )
        .unwrap();
        let (direct_min, _) = direct.boundary_min_re(&scan);
        assert!((report.observed_min - direct_min).abs() < 1e-12);
    }

    #[test]
    fn hypothesis_violation_yields_no_verdict() {
        let p = ClassParams::new(1, 2.0, 0.25, 3.0).unwrap();
        assert!(!p.within_gasper_bound());
        let f = generate_member(&KernelSpec::default_point_mass(), &p, 32).unwrap();
        let report = verify(&f, &p, 16, &ScanConfig::default(), VERIFY_TOL).unwrap();
        assert!(!report.hypothesis_ok);
        assert_eq!(report.pass, None);
        // numbers are still reported
        assert!(report.observed_min.is_finite());
    }

    #[test]
    fn bound_is_attained_at_the_critical_constant() {
        // at alpha + c equal to the critical constant the three-term cosine
        // sum touches zero, so the point mass with cutoff 4 lands on the
        // bound itself
        let p = ClassParams::new(0, 1.0, 0.0, GASPER_CONSTANT - 1.0).unwrap();
        let report = tightness_probe(&p, 4, 8, &ScanConfig::default(), 0, 1).unwrap();
        assert!(
            report.min_margin.abs() < 1e-6,
            "margin = {:e} should be near zero",
            report.min_margin
        );
        assert_eq!(report.probes, 1);
        // budget 0 probes exactly the default point mass
        assert_eq!(report.witness.points(), &[Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn probe_margin_never_grows_with_budget() {
        let p = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let scan = ScanConfig::default();
        let lean = tightness_probe(&p, 16, 32, &scan, 0, 7).unwrap();
        let rich = tightness_probe(&p, 16, 32, &scan, 5, 7).unwrap();
        assert!(rich.min_margin <= lean.min_margin + 1e-12);
        assert!(lean.min_margin > -VERIFY_TOL);
        assert_eq!(rich.probes, 6);
    }

    #[test]
    fn probe_margin_stays_safe_as_cutoff_grows() {
        let p = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let scan = ScanConfig::default();
        for m in [2, 4, 8, 16, 32] {
            let report = tightness_probe(&p, m, 32, &scan, 2, 11).unwrap();
            assert!(
                report.min_margin >= -VERIFY_TOL,
                "m = {m}: margin {}",
                report.min_margin
            );
        }
    }

    fn demo_cells() -> Vec<SweepCell> {
        [(1, 1.0, 0.25, 1.0, 8), (0, 2.0, 0.5, 0.5, 16)]
            .iter()
            .map(|&(n, alpha, beta, c, m)| SweepCell {
                params: ClassParams::new(n, alpha, beta, c).unwrap(),
                m,
            })
            .collect()
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let cells = demo_cells();
        let scan = ScanConfig::default();
        let a = sweep(&cells, 3, 42, 32, &scan, VERIFY_TOL).unwrap();
        let b = sweep(&cells, 3, 42, 32, &scan, VERIFY_TOL).unwrap();
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.observed_min.to_bits(), y.observed_min.to_bits());
            assert_eq!(x.margin.to_bits(), y.margin.to_bits());
            assert_eq!(x.pass, y.pass);
        }
        for (i, row) in a.iter().enumerate() {
            assert_eq!(row.cell, i / 3);
            assert_eq!(row.draw, i % 3);
            assert_eq!(row.m, cells[row.cell].m);
            assert_eq!(row.pass, Some(true));
            assert!(row.error.is_none());
        }
    }

    #[test]
    fn sweep_prefix_stability_under_stream_split() {
        // dropping the second cell must not change the first cell's rows
        let cells = demo_cells();
        let scan = ScanConfig::default();
        let full = sweep(&cells, 2, 9, 32, &scan, VERIFY_TOL).unwrap();
        let head = sweep(&cells[..1], 2, 9, 32, &scan, VERIFY_TOL).unwrap();
        for (f, h) in full.iter().take(2).zip(&head) {
            assert_eq!(f.observed_min.to_bits(), h.observed_min.to_bits());
        }
    }

    #[test]
    fn single_cell_sweep_reproduces_direct_verification() {
        let params = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let cell = SweepCell { params, m: 8 };
        let scan = ScanConfig::default();
        let rows = sweep(&[cell], 1, 5, 32, &scan, VERIFY_TOL).unwrap();
        // replay the cell's draw by hand
        let mut rng = cell_rng(5, 0);
        let spec = draw_kernel(&mut rng, MIXTURE_MAX_POINTS);
        let f = generate_member(&spec, &params, 32).unwrap();
        let direct = verify(&f, &params, 8, &scan, VERIFY_TOL).unwrap();
        assert_eq!(rows[0].observed_min.to_bits(), direct.observed_min.to_bits());
        assert_eq!(rows[0].margin.to_bits(), direct.margin.to_bits());
        assert_eq!(rows[0].pass, direct.pass);
    }

    #[test]
    fn sweep_reports_cell_errors_in_place() {
        let params = ClassParams::new(1, 1.0, 0.25, 1.0).unwrap();
        let cells = [SweepCell { params, m: 8 }, SweepCell { params, m: 99 }];
        let scan = ScanConfig::default();
        let rows = sweep(&cells, 2, 3, 32, &scan, VERIFY_TOL).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].error.is_none());
        assert!(rows[1].error.is_none());
        for row in &rows[2..] {
            let message = row.error.as_deref().unwrap();
            assert!(message.contains("99"), "unexpected message: {message}");
            assert!(row.observed_min.is_nan());
            assert_eq!(row.pass, None);
        }
    }

    #[test]
    fn sweep_rejects_empty_work() {
        let scan = ScanConfig::default();
        assert!(sweep(&[], 1, 1, 32, &scan, VERIFY_TOL).is_err());
        let cell = SweepCell {
            params: ClassParams::new(1, 1.0, 0.25, 1.0).unwrap(),
            m: 8,
        };
        assert!(sweep(&[cell], 0, 1, 32, &scan, VERIFY_TOL).is_err());
    }
}
