//! Command-line front end. Every command emits a JSON report embedding its
//! resolved configuration (CSV is available where tables make sense), writes
//! to `--out` or stdout, and maps outcomes to exit codes:
//!
//! * 0: success, or every applicable check passed
//! * 1: a semantic check failed (non-member, bound violated, outside hull)
//! * 2: a bisection bracket did not straddle a sign change
//! * 64: usage error (bad flags or parameters)
//! * 65: unreadable or malformed input file
//!
//! All randomized commands are seeded; identical flags give byte-identical
//! reports.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, SweepRow, VerificationReport, VERIFY_TOL};
use crate::classes::{
    generate_member, half_plane_factor, membership_infimum, KernelSpec, MembershipReport,
    MEMBERSHIP_TOL,
};
use crate::cosine::{cosine_sum_min, estimate_best_constant, GasperEstimate, GASPER_CONSTANT};
use crate::error::Error;
use crate::hull::{hull_membership_check, HullReport};
use crate::io::{self, FileError, SeriesDoc};
use crate::operators::{convolution_kernel, ClassParams};
use crate::sampling::{draw_kernel, seeded_rng, MIXTURE_MAX_POINTS};
use crate::series::ScanConfig;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_BRACKET: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INPUT: u8 = 65;

/// Parses `args` (including the program name) and runs the selected command.
/// Returns the process exit code; diagnostics go to stderr.
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

#[derive(Parser)]
#[command(
    name = "quasisum",
    version,
    about = "Boundary lower bounds for integral transforms and partial sums of normalized analytic functions"
)]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Scan-level facts: cosine sums, the critical constant, hull containment
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Membership checks and member generation for the function classes
    #[command(subcommand)]
    Classes(ClassesCmd),
    /// The partial-sum lower bound: closed form, verification, sweeps
    #[command(subcommand)]
    Theorem(TheoremCmd),
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Estimate the largest shift for which the cosine sums stay nonnegative
    Gasper(GasperArgs),
    /// Minimize shifted cosine sums over angle and term count
    Cosmin(CosminArgs),
    /// Check that factor-times-target values stay in the target's hull
    Hull(HullArgs),
}

#[derive(Subcommand)]
enum ClassesCmd {
    /// Scan a series file for class membership
    Check(CheckArgs),
    /// Generate class members from mixture kernels
    Generate(GenerateArgs),
}

#[derive(Subcommand)]
enum TheoremCmd {
    /// Print the closed-form lower bound for given parameters
    Bound(BoundArgs),
    /// Verify the bound on generated members
    Verify(VerifyArgs),
    /// Verify the bound across a grid of parameter cells
    Sweep(SweepArgs),
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BracketFailure { .. } => EXIT_BRACKET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<FileError> for Failure {
    fn from(err: FileError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: err.to_string(),
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        TopCommand::Lemma(LemmaCmd::Gasper(args)) => cmd_gasper(args),
        TopCommand::Lemma(LemmaCmd::Cosmin(args)) => cmd_cosmin(args),
        TopCommand::Lemma(LemmaCmd::Hull(args)) => cmd_hull(args),
        TopCommand::Classes(ClassesCmd::Check(args)) => cmd_check(args),
        TopCommand::Classes(ClassesCmd::Generate(args)) => cmd_generate(args),
        TopCommand::Theorem(TheoremCmd::Bound(args)) => cmd_bound(args),
        TopCommand::Theorem(TheoremCmd::Verify(args)) => cmd_verify(args),
        TopCommand::Theorem(TheoremCmd::Sweep(args)) => cmd_sweep(args),
    }
}

#[derive(Args, Serialize)]
struct ParamFlags {
    /// Differential order in the transform chain
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Power the series is lifted to
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Class level the transformed real part must exceed
    #[arg(long, default_value_t = 0.25)]
    beta: f64,
    /// Shift of the integral transform
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl ParamFlags {
    fn resolve(&self) -> Result<ClassParams, Failure> {
        ClassParams::new(self.n, self.alpha, self.beta, self.c).map_err(Failure::from)
    }
}

#[derive(Args)]
struct KernelSource {
    /// Mixture file; omitted means the single point mass at 1
    #[arg(value_name = "KERNEL")]
    kernel: Option<PathBuf>,
    /// Draw this many random mixtures instead of reading a file
    #[arg(long, value_name = "N", conflicts_with = "kernel")]
    random: Option<usize>,
    /// Seed for random mixture draws
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl KernelSource {
    fn specs(&self) -> Result<Vec<KernelSpec>, Failure> {
        if let Some(path) = &self.kernel {
            return Ok(vec![io::read_kernel(path)?]);
        }
        match self.random {
            None => Ok(vec![KernelSpec::default_point_mass()]),
            Some(0) => Err(usage("--random needs at least one draw")),
            Some(count) => {
                let mut rng = seeded_rng(self.seed);
                Ok((0..count)
                    .map(|_| draw_kernel(&mut rng, MIXTURE_MAX_POINTS))
                    .collect())
            }
        }
    }

    fn describe(&self) -> Option<String> {
        self.kernel.as_ref().map(|p| p.display().to_string())
    }
}

fn scan_config(grid_size: usize, radius: f64) -> Result<ScanConfig, Failure> {
    ScanConfig::new(grid_size, ScanConfig::DEFAULT_REFINE_TOL, radius).map_err(Failure::from)
}

fn positive_tol(tol: f64) -> Result<f64, Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(usage(format!("tolerance must be positive, got {tol}")))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_doc<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("report serialization failed: {e}"),
    })?;
    text.push('\n');
    Ok(text)
}

fn hypothesis_warning(params: &ClassParams) -> String {
    format!(
        "alpha + c = {} exceeds the critical constant {GASPER_CONSTANT}; \
         the bound makes no claim here and reports are informational",
        params.alpha() + params.c()
    )
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct GasperArgs {
    /// Largest term count the minimization covers
    #[arg(long, default_value_t = 200)]
    lmax: usize,
    /// Target bracket width for the bisection
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GasperConfig {
    lmax: usize,
    tol: f64,
    grid_size: usize,
    refine_tol: f64,
}

#[derive(Serialize)]
struct GasperOutput {
    config: GasperConfig,
    report: GasperEstimate,
}

fn cmd_gasper(args: GasperArgs) -> Result<u8, Failure> {
    let tol = positive_tol(args.tol)?;
    let scan = scan_config(args.grid_size, 1.0)?;
    let report = estimate_best_constant(args.lmax, tol, &scan)?;
    let text = json_doc(&GasperOutput {
        config: GasperConfig {
            lmax: args.lmax,
            tol,
            grid_size: scan.grid_size(),
            refine_tol: scan.refine_tol(),
        },
        report,
    })?;
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct CosminArgs {
    /// Shift values, comma separated
    #[arg(long, required = true, value_delimiter = ',', value_name = "GAMMA")]
    gamma: Vec<f64>,
    /// Largest term count the minimization covers
    #[arg(long, default_value_t = 200)]
    lmax: usize,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CosineMinRow {
    gamma: f64,
    min: f64,
    argmin_terms: usize,
    argmin_theta: f64,
}

#[derive(Serialize)]
struct CosminConfig<'a> {
    gamma: &'a [f64],
    lmax: usize,
    grid_size: usize,
    refine_tol: f64,
}

#[derive(Serialize)]
struct CosminOutput<'a> {
    config: CosminConfig<'a>,
    reports: Vec<CosineMinRow>,
}

fn cmd_cosmin(args: CosminArgs) -> Result<u8, Failure> {
    if args.gamma.is_empty() {
        return Err(usage("--gamma needs at least one value"));
    }
    let scan = scan_config(args.grid_size, 1.0)?;
    let mut rows = Vec::with_capacity(args.gamma.len());
    for &gamma in &args.gamma {
        let min = cosine_sum_min(gamma, args.lmax, &scan)?;
        rows.push(CosineMinRow {
            gamma,
            min: min.value,
            argmin_terms: min.terms,
            argmin_theta: min.theta,
        });
    }
    let text = match args.format {
        OutputFormat::Json => json_doc(&CosminOutput {
            config: CosminConfig {
                gamma: &args.gamma,
                lmax: args.lmax,
                grid_size: scan.grid_size(),
                refine_tol: scan.refine_tol(),
            },
            reports: rows,
        })?,
        OutputFormat::Csv => {
            let mut text = String::from("gamma,min,argmin_terms,argmin_theta\n");
            for row in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{}",
                    io::format_f64(row.gamma),
                    io::format_f64(row.min),
                    row.argmin_terms,
                    io::format_f64(row.argmin_theta)
                );
            }
            text
        }
    };
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct HullArgs {
    #[command(flatten)]
    source: KernelSource,
    #[command(flatten)]
    params: ParamFlags,
    /// Cutoff of the target polynomial
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Truncation order; the factor precondition needs deep tails
    #[arg(long = "M", default_value_t = 8192)]
    order: usize,
    /// Largest admissible signed distance outside the hull
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Radius of the circle whose image builds the hull
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct HullConfig {
    kernel: Option<String>,
    random: Option<usize>,
    seed: u64,
    params: ClassParams,
    m: usize,
    #[serde(rename = "M")]
    order: usize,
    tol: f64,
    grid_size: usize,
    radius: f64,
}

#[derive(Serialize)]
struct HullOutput {
    config: HullConfig,
    warning: Option<String>,
    reports: Vec<HullReport>,
}

fn cmd_hull(args: HullArgs) -> Result<u8, Failure> {
    let params = args.params.resolve()?;
    let tol = positive_tol(args.tol)?;
    let scan = scan_config(args.grid_size, args.radius)?;
    let target = convolution_kernel(args.m, args.order, &params)?;
    let specs = args.source.specs()?;
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        let factor = half_plane_factor(spec, args.order);
        reports.push(hull_membership_check(&factor, &target, &scan, tol)?);
    }
    let vacuous = reports.iter().filter(|r| !r.precondition_ok).count();
    let warning = (vacuous > 0).then(|| {
        format!(
            "{vacuous} factor(s) failed the real-part precondition; \
             their containment reports are vacuous"
        )
    });
    let failed = reports.iter().any(|r| r.pass == Some(false));
    let text = json_doc(&HullOutput {
        config: HullConfig {
            kernel: args.source.describe(),
            random: args.source.random,
            seed: args.source.seed,
            params,
            m: args.m,
            order: args.order,
            tol,
            grid_size: scan.grid_size(),
            radius: scan.radius(),
        },
        warning,
        reports,
    })?;
    emit(&args.out, &text)?;
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

#[derive(Args)]
struct CheckArgs {
    /// Series file to test
    #[arg(value_name = "SERIES")]
    input: PathBuf,
    #[command(flatten)]
    params: ParamFlags,
    /// Margin allowed below the class level
    #[arg(long, default_value_t = MEMBERSHIP_TOL)]
    tol: f64,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Radius of the membership scan circle
    #[arg(long, default_value_t = 0.999)]
    radius: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CheckConfig {
    input: String,
    params: ClassParams,
    tol: f64,
    grid_size: usize,
    radius: f64,
}

#[derive(Serialize)]
struct CheckOutput {
    config: CheckConfig,
    report: MembershipReport,
}

fn cmd_check(args: CheckArgs) -> Result<u8, Failure> {
    let params = args.params.resolve()?;
    let tol = positive_tol(args.tol)?;
    let scan = scan_config(args.grid_size, args.radius)?;
    let series = io::read_series(&args.input)?;
    let report = membership_infimum(&series, &params, &scan, tol)?;
    let member = report.is_member;
    let text = json_doc(&CheckOutput {
        config: CheckConfig {
            input: args.input.display().to_string(),
            params,
            tol,
            grid_size: scan.grid_size(),
            radius: scan.radius(),
        },
        report,
    })?;
    emit(&args.out, &text)?;
    Ok(if member { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: KernelSource,
    #[command(flatten)]
    params: ParamFlags,
    /// Truncation order of the generated series
    #[arg(long = "M", default_value_t = 64)]
    order: usize,
    /// Write the series here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    let params = args.params.resolve()?;
    if args.order < 2 {
        return Err(usage(format!(
            "truncation order must be at least 2, got {}",
            args.order
        )));
    }
    let specs = args.source.specs()?;
    let docs: Vec<SeriesDoc> = specs
        .iter()
        .map(|spec| {
            generate_member(spec, &params, args.order).map(|f| SeriesDoc::from(&f))
        })
        .collect::<Result<_, _>>()?;
    // a single member is written as a bare series document so the output
    // feeds straight back into `classes check`
    let text = if docs.len() == 1 {
        json_doc(&docs[0])?
    } else {
        json_doc(&docs)?
    };
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct BoundReport {
    bound: f64,
    nonnegativity_threshold: f64,
    hypothesis_ok: bool,
}

#[derive(Serialize)]
struct BoundOutput {
    config: ClassParams,
    report: BoundReport,
}

fn cmd_bound(args: BoundArgs) -> Result<u8, Failure> {
    let params = args.params.resolve()?;
    let text = json_doc(&BoundOutput {
        config: params,
        report: BoundReport {
            bound: bounds::lower_bound(&params),
            nonnegativity_threshold: bounds::nonnegativity_threshold(&params),
            hypothesis_ok: params.within_gasper_bound(),
        },
    })?;
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: KernelSource,
    #[command(flatten)]
    params: ParamFlags,
    /// Partial-sum cutoff (at least 2)
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Truncation order of the generated members
    #[arg(long = "M", default_value_t = 64)]
    order: usize,
    /// Margin allowed below the bound
    #[arg(long, default_value_t = VERIFY_TOL)]
    tol: f64,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Scan circle radius (the quantity is a polynomial, exact at 1)
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VerifyConfig {
    kernel: Option<String>,
    random: Option<usize>,
    seed: u64,
    params: ClassParams,
    m: usize,
    #[serde(rename = "M")]
    order: usize,
    tol: f64,
    grid_size: usize,
    radius: f64,
}

#[derive(Serialize)]
struct VerifyOutput {
    config: VerifyConfig,
    warning: Option<String>,
    reports: Vec<VerificationReport>,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let params = args.params.resolve()?;
    let tol = positive_tol(args.tol)?;
    let scan = scan_config(args.grid_size, args.radius)?;
    let specs = args.source.specs()?;
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        let f = generate_member(spec, &params, args.order)?;
        reports.push(bounds::verify(&f, &params, args.m, &scan, tol)?);
    }
    let warning = (!params.within_gasper_bound()).then(|| hypothesis_warning(&params));
    let failed = reports.iter().any(|r| r.pass == Some(false));
    let text = json_doc(&VerifyOutput {
        config: VerifyConfig {
            kernel: args.source.describe(),
            random: args.source.random,
            seed: args.source.seed,
            params,
            m: args.m,
            order: args.order,
            tol,
            grid_size: scan.grid_size(),
            radius: scan.radius(),
        },
        warning,
        reports,
    })?;
    emit(&args.out, &text)?;
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

#[derive(Args)]
struct SweepArgs {
    /// Grid file: cells, spec count, and seed
    #[arg(value_name = "GRID")]
    grid: PathBuf,
    /// Truncation order of the generated members
    #[arg(long = "M", default_value_t = 64)]
    order: usize,
    /// Margin allowed below the bound
    #[arg(long, default_value_t = VERIFY_TOL)]
    tol: f64,
    /// Angular grid size for scans
    #[arg(long, default_value_t = ScanConfig::DEFAULT_GRID)]
    grid_size: usize,
    /// Scan circle radius
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SweepConfig {
    grid: String,
    spec_count: usize,
    seed: u64,
    #[serde(rename = "M")]
    order: usize,
    tol: f64,
    grid_size: usize,
    radius: f64,
}

#[derive(Serialize)]
struct SweepOutput {
    config: SweepConfig,
    rows: Vec<SweepRow>,
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut text = String::from("n,alpha,beta,c,m,bound,observed_min,margin,residual,pass\n");
    for row in rows {
        let pass = match (&row.error, row.pass) {
            (Some(_), _) => "error",
            (None, Some(true)) => "true",
            (None, Some(false)) => "false",
            (None, None) => "na",
        };
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{},{},{}",
            row.params.n(),
            io::format_f64(row.params.alpha()),
            io::format_f64(row.params.beta()),
            io::format_f64(row.params.c()),
            row.m,
            io::format_f64(row.bound),
            io::format_f64(row.observed_min),
            io::format_f64(row.margin),
            io::format_f64(row.residual),
            pass
        );
    }
    text
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, Failure> {
    let tol = positive_tol(args.tol)?;
    let scan = scan_config(args.grid_size, args.radius)?;
    let (cells, spec_count, seed) = io::read_grid(&args.grid)?;
    let rows = bounds::sweep(&cells, spec_count, seed, args.order, &scan, tol)?;

    let applicable = rows.iter().filter(|r| r.pass.is_some()).count();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    let informational = rows.len() - applicable - errors;
    eprintln!(
        "pass {passed}/{applicable} applicable, {informational} not-applicable, {errors} errors"
    );

    let failed = passed < applicable || errors > 0;
    let text = match args.format {
        OutputFormat::Json => json_doc(&SweepOutput {
            config: SweepConfig {
                grid: args.grid.display().to_string(),
                spec_count,
                seed,
                order: args.order,
                tol,
                grid_size: scan.grid_size(),
                radius: scan.radius(),
            },
            rows,
        })?,
        OutputFormat::Csv => sweep_csv(&rows),
    };
    emit(&args.out, &text)?;
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}
