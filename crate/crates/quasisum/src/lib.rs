//! Coefficient transforms and boundary lower bounds for normalized analytic
//! functions on the unit disk.
//!
//! The library works with truncated power series `f(z) = z (1 + b_2 z + ...
//! + b_M z^(M-1))` stored by their tail coefficients. On top of the series
//! arithmetic it provides the diagonal integral and differential transforms,
//! partial-sum cutoffs, class membership scans, shifted cosine-sum minima
//! with the critical-constant estimate, convex-hull containment checks for
//! termwise products, and the closed-form lower bound for transformed
//! partial sums together with randomized verification sweeps.
//!
//! The `examples/` directory is the front door; each example is a small,
//! runnable study of one capability:
//!
//! * `gasper_constant`: bisection estimate of the critical cosine-sum shift
//! * `cosine_minima`: where shifted cosine and power sums dip lowest
//! * `class_membership`: generating members and scanning the class condition
//! * `libera_partial_sums`: the classical integral case and its bound
//! * `factorization`: the transform chain as a termwise product
//! * `convolution_hull`: hull containment for termwise products
//! * `parameter_sweep`: bound verification across a parameter grid
//!
//! Run one with `cargo run --release --example gasper_constant`. The same
//! functionality is scriptable through the `quasisum` binary; see the
//! `cli` module for subcommands and exit codes.

pub mod bounds;
pub mod classes;
pub mod cli;
pub mod cosine;
pub mod error;
pub mod hull;
pub mod io;
pub mod operators;
pub mod sampling;
pub mod series;

pub use cosine::GASPER_CONSTANT;
pub use error::{Error, Result};
pub use operators::ClassParams;
pub use series::{NormalizedSeries, ScanConfig, ZeroSeries};
