//! Arithmetic in the commutative ring of S(A)-linearly correlated fuzzy numbers.
//!
//! A fuzzy number is represented by its family of α-cuts sampled on a level
//! grid ([`FuzzyNumber`]). Given a strongly linearly independent (SLI) basis
//! `{1, A₂, …, Aₙ}` of such numbers ([`SliBasis`]), every real coordinate
//! vector `q ∈ ℝⁿ` names the fuzzy number `q₁·1 + q₂A₂ + … + qₙAₙ`
//! ([`SVector`]). The ψ-operations — sum, scalar multiple, cross product,
//! inverse and division — act on the coordinates and make that span a
//! commutative ring, which is where the linear-equation solver
//! ([`solver`]) lives.
//!
//! Module map:
//!
//! - [`interval`], [`grid`], [`fuzzy`] — α-cut representation and the
//!   classical (Minkowski) operations, power hedges, the Hausdorff metric.
//! - [`zadeh`] — interval extensions of real functions, used as an
//!   independent oracle for the linearized product.
//! - [`sli`] — SLI basis construction from a non-symmetric trapezoidal
//!   generator, the numeric certificate, and the ψ isomorphism.
//! - [`ring`] — the ψ-arithmetic on coordinates.
//! - [`solver`] — the linear map `A ⊙ψ X +ψ B`, its inverse, the equation
//!   solver including the degenerate core-zero branch, and the levelwise
//!   interval-system report.
//! - [`json`] — file formats used by the CLI (JSON with deterministic
//!   17-significant-digit floats, CSV α-cut tables).

pub mod error;
pub mod fuzzy;
pub mod grid;
pub mod interval;
pub mod json;
pub mod ring;
pub mod sli;
pub mod solver;
pub mod zadeh;

pub use error::{Error, Result};
pub use fuzzy::{FuzzyNumber, Trapezoid};
pub use grid::LevelGrid;
pub use interval::Interval;
pub use sli::{verify_sli, Recovery, SVector, SliBasis, SliCertificate};
pub use solver::{
    apply_inverse, apply_linear, levelwise_system, LevelResidual, LevelwiseReport, LinearEquation,
    Solution,
};
pub use zadeh::{
    extend_fuzzy, extend_grid, extend_vertex, BoxFunction, ExtensionMode, Monotonicity,
};

/// Default number of grid levels (inclusive of α = 0 and α = 1).
pub const DEFAULT_LEVELS: usize = 101;

/// A core interval at most this wide counts as a singleton.
pub const SINGLETON_TOL: f64 = 1e-9;

/// Default SLI certificate threshold, relative to the midpoint matrix
/// max-norm.
pub const DEFAULT_SLI_THRESHOLD: f64 = 1e-8;

/// Coordinate / consistency residuals at most this large count as zero.
pub const RESIDUAL_TOL: f64 = 1e-9;
