//! # qepi
//!
//! Quantum entropy power inequalities for bosonic systems, verified
//! numerically in truncated Fock space, together with the closed-form
//! classical-capacity bounds they imply for thermal and classical noise
//! channels.
//!
//! The crate is organized around a handful of small modules:
//!
//! - [`fock`] — n-mode truncated Fock states, quadratures, displacements,
//!   constructors with explicit tail budgets.
//! - [`gaussian`] — covariance-matrix oracle: closed-form moments and
//!   entropies every Fock-space result is checked against on Gaussian inputs.
//! - [`channels`] — the beam splitter `X ⊞_λ Y`, thermal noise, and the
//!   classical (random-displacement) noise channel.
//! - [`diffusion`] — the quadrature diffusion semigroup `e^{tL}` with
//!   `L(ρ) = −¼Σᵢ[Rᵢ,[Rᵢ,ρ]]`, via a dense superoperator eigendecomposition
//!   or a Gauss–Hermite displacement average.
//! - [`information`] — entropy, relative entropy, divergence-based Fisher
//!   information, and the de Bruijn / Stam / convexity checks.
//! - [`phase_space`] — characteristic functions and Wigner grids.
//! - [`bounds`] — the capacity-bound formulas and curve generation.
//! - [`sweeps`] — seeded corpus sweeps behind the verification commands.
//! - [`cli`] — the command-line front end (`bounds`, `epi-test`, `debruijn`,
//!   `stam`, `convexity`, `scurve`, `wigner`).
//!
//! Conventions are fixed once in [`convention::ConventionLedger`]
//! (`[Q,P] = 2i`, vacuum variance 1, `H = 2N+1`) and embedded in every
//! serialized output. See the `examples/` directory for one runnable example
//! per capability.

pub mod bounds;
pub mod channels;
pub mod cli;
pub mod convention;
pub mod diffusion;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod information;
pub mod linalg;
pub mod output;
pub mod phase_space;
pub mod sweeps;

pub use convention::{ConventionLedger, LEDGER};
pub use error::{Error, Result};
