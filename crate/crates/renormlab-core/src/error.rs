//! Error taxonomy for the laboratory.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no real fixed point for c = {c} (c > 1/4)")]
    NoRealFixedPoint { c: String },

    #[error("cycle search inconclusive: orbit neither converged nor escaped in {budget} iterations")]
    Inconclusive { budget: usize },

    #[error("no sign change of the critical-value section in the bracket")]
    NoRootInBracket,

    #[error("expected one root in bracket, scan found {count} sign changes")]
    MultipleRoots { count: usize },

    #[error("kneading words share a C-terminated prefix of different lengths; extend K")]
    IncomparablePrefix,

    #[error("alpha fixed point is not repelling for c = {c}; principal nest undefined")]
    AlphaNotRepelling { c: String },

    #[error("first-return search exhausted its budget of {budget} iterations")]
    ReturnBudgetExceeded { budget: usize },

    #[error("invariance test inconclusive near a window boundary (residual {residual} within band {band})")]
    BoundaryBand { residual: String, band: String },

    #[error("no f(0)=1 representative for c = 0")]
    DegenerateCenter,

    #[error("orbit point left the germ domain (|x| = {x} > {rho}) at step {step}")]
    DomainEscape { x: String, rho: String, step: usize },

    #[error("tail certificate violated after interpolation: |v_last|·rho^(2(N-1)) = {bound}; increase N")]
    TailBlowup { bound: String },

    #[error("kneading of length {len} cannot separate the germ from the quadratic family")]
    KneadingTooShort { len: usize },

    #[error("germ is not unimodal on [-1, 1]")]
    NotUnimodal,

    #[error("Newton failed to reduce the residual below {target} in {iters} iterations (best {best})")]
    NewtonDiverged {
        target: String,
        best: String,
        iters: usize,
    },

    #[error("eigensolver did not converge (stalled at off-diagonal {offdiag})")]
    EigSolverFailure { offdiag: String },

    #[error("top eigenvector failed the residual certificate: {residual} > {tol}")]
    EigenvectorUncertified { residual: String, tol: String },

    #[error("parameter c = {c} is not renormalizable")]
    NotRenormalizable { c: String },

    #[error("straightening failed: {reason}")]
    StraighteningFailed { reason: String },

    #[error("bisection did not reach tolerance within {iters} iterations")]
    BisectionStalled { iters: usize },

    #[error("grid scan could not separate adjacent sign changes after refinement")]
    GridTooCoarse,

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
