//! Spectral detection of entanglement and EPR steering for two-qubit
//! density matrices.
//!
//! Every test implemented here is a function of the eigenvalue spectrum of
//! the partially transposed state: the PPT entanglement criterion (in both
//! its smallest-eigenvalue and permutation-symmetric product forms), the
//! CSYWO steering test, and a steering functional built from the elementary
//! symmetric functions of the spectrum that is necessary and sufficient on
//! Werner, pure, and rank-2 states. The crate also ships closed-form
//! analytics for the rank-2 family, constructors for the standard state
//! families, Wootters concurrence, and sweep/bisection/verification tooling
//! with a thin `steerkit` CLI on top.
//!
//! The `examples/` directory contains one runnable example per capability;
//! start with `cargo run --example steering_criteria`.

pub mod criteria;
pub mod qmat;
pub mod rank2;
pub mod scan;
pub mod states;

pub use criteria::{
    concurrence, csywo, geometric_gw, peres_steering, ppt_sym_value, ppt_value, sym_fns,
    CriterionKind, CriterionReport, MuPolicy, SymFns, Verdict,
};
pub use qmat::{
    eig_hermitian4, kron, partial_transpose, pauli, Axis, Complex, DensityMatrix, Matrix2, Matrix4,
    Side, Spectrum,
};
pub use rank2::{
    analytics, check_identity_goc, concurrence_closed, steering_value_rank2, Rank2Analytics,
};
pub use scan::{bisect_critical, evaluate, sweep, verify, BisectResult, Suite, SweepSpec};
pub use states::{FamilyPoint, Rank2Params};

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A matrix handed to the Hermitian eigensolver (or density-matrix
    /// constructor) deviates from its adjoint beyond tolerance.
    #[error("matrix is not Hermitian: max |m[i][j] - conj(m[j][i])| = {deviation:.3e}")]
    NonHermitian { deviation: f64 },

    /// A parameter fell outside its documented range.
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A matrix failed density-matrix validation (trace or positivity).
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// Bisection requires criterion values of opposite sign at the ends of
    /// the bracket.
    #[error("no sign change over the bracket: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")]
    NoBracket { f_lo: f64, f_hi: f64 },

    /// Bisection did not reach the requested tolerance.
    #[error("bisection did not converge within {max_iterations} iterations")]
    NonConvergence { max_iterations: usize },

    /// Anything structurally unsupported: unknown family or criterion
    /// names, missing parameters, criterion/family mismatches.
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
