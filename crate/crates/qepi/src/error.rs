//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by state constructors, channels, and checks.
#[derive(Debug, Error)]
pub enum Error {
    /// A Fock constructor was asked for a level at or above the cutoff.
    #[error("photon number {photons} does not fit below cutoff {cutoff}")]
    CutoffTooSmall { photons: usize, cutoff: usize },

    /// The probability mass beyond the cutoff exceeds the tail budget.
    #[error(
        "tail mass {tail:.3e} beyond cutoff {cutoff} exceeds budget {budget:.1e}; \
         a cutoff of at least {required} is needed"
    )]
    TailMass {
        tail: f64,
        cutoff: usize,
        budget: f64,
        required: usize,
    },

    /// A displacement (or a quadrature node) would push mass past the cutoff.
    #[error(
        "displacement leakage defect {defect:.3e} exceeds budget {budget:.1e}; \
         try a cutoff of at least {suggested}"
    )]
    DisplacementLeakage {
        defect: f64,
        budget: f64,
        suggested: usize,
    },

    /// Two states that must share a cutoff/mode layout do not.
    #[error("cutoff mismatch: {left:?} vs {right:?}")]
    CutoffMismatch { left: Vec<usize>, right: Vec<usize> },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation that needs a strictly positive density matrix got a
    /// rank-deficient one.
    #[error(
        "state is not full rank (min eigenvalue {min_eig:.3e}); \
         smooth it with a short diffusion first"
    )]
    NotFullRank { min_eig: f64 },

    /// The finite-difference stencil hit an infinite divergence.
    #[error("relative entropy is infinite at a stencil point; state support is too degenerate")]
    DivergenceInfinite,

    /// A covariance matrix violates the uncertainty relation.
    #[error("covariance matrix violates the uncertainty relation (min symplectic eigenvalue {nu_min:.6})")]
    UncertaintyViolation { nu_min: f64 },

    /// A diffusion time beyond the safe budget for the current cutoff.
    #[error(
        "diffusion time {t} exceeds the truncation budget at cutoff {cutoff}; \
         a cutoff of at least {suggested} is needed"
    )]
    DiffusionBudget {
        t: f64,
        cutoff: usize,
        suggested: usize,
    },

    /// Mode subset errors for partial traces.
    #[error("invalid mode subset: {0}")]
    InvalidModeSubset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
