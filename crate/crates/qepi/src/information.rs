//! Entropic functionals: von Neumann entropy, quantum relative entropy, the
//! divergence-based quantum Fisher information along displacement families,
//! and the de Bruijn / Stam / convexity checks built from them.
//!
//! Everything is computed in nats. The divergence-based Fisher information
//! diverges on pure states (relative entropy between distinct pure states is
//! infinite), so all Fisher operations require full rank and direct callers
//! to [`crate::diffusion::DiffusionEngine::smooth`] first.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::channels::beam_splitter_output;
use crate::convention::LEDGER;
use crate::diffusion::DiffusionEngine;
use crate::error::{Error, Result};
use crate::fock::{displacement_along, QuadratureIndex, TruncatedState};
use crate::linalg;

/// Eigenvalues below this contribute zero to `−tr ρ ln ρ`.
pub const EIG_FLOOR: f64 = 1e-14;
/// σ-eigenvalues are clamped here when taking the matrix log on the support.
pub const SUPP_CLAMP: f64 = 1e-13;
/// ρ-mass allowed off σ's support before the divergence is declared infinite.
pub const SUPP_TOL: f64 = 1e-9;
/// Tolerance absorbing finite-difference error in Fisher quantities.
pub const FD_TOL: f64 = 1e-6;
/// Minimum eigenvalue for a state to count as full rank.
pub const FULL_RANK_FLOOR: f64 = 1e-12;
/// Default finite-difference step for the divergence stencil.
pub const DEFAULT_FISHER_STEP: f64 = 1e-2;

/// `S(ρ) = −tr ρ ln ρ` in nats, from the eigenvalues.
pub fn von_neumann_entropy(state: &TruncatedState) -> Result<f64> {
    let vals = linalg::eigvalsh(state.rho())?;
    Ok(entropy_of_eigenvalues(vals.as_slice().unwrap()))
}

pub(crate) fn entropy_of_eigenvalues(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|&&p| p > EIG_FLOOR)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Outcome of a relative-entropy evaluation: a finite value in nats, or the
/// infinity signal raised when ρ's support escapes σ's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelativeEntropy::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(v) => Some(*v),
            RelativeEntropy::Infinite => None,
        }
    }
}

/// `S(ρ‖σ) = tr ρ(ln ρ − ln σ)` in nats.
///
/// σ's log is taken on its support with eigenvalues clamped at
/// [`SUPP_CLAMP`]; the divergence is declared infinite when ρ places more
/// than [`SUPP_TOL`] mass off that support.
pub fn relative_entropy(rho: &TruncatedState, sigma: &TruncatedState) -> Result<RelativeEntropy> {
    if rho.cutoff() != sigma.cutoff() {
        return Err(Error::CutoffMismatch {
            left: rho.cutoff().dims().to_vec(),
            right: sigma.cutoff().dims().to_vec(),
        });
    }
    let rho_vals = linalg::eigvalsh(rho.rho())?;
    let tr_rho_ln_rho: f64 = rho_vals
        .iter()
        .filter(|&&p| p > EIG_FLOOR)
        .map(|&p| p * p.ln())
        .sum();

    let (svals, svecs) = linalg::eigh(sigma.rho())?;
    // ρ in σ's eigenbasis; only the diagonal is needed.
    let rho_in_sigma = linalg::dagger(&svecs).dot(rho.rho()).dot(&svecs);

    let mut off_support_mass = 0.0;
    let mut tr_rho_ln_sigma = 0.0;
    for (i, &s) in svals.iter().enumerate() {
        let weight = rho_in_sigma[(i, i)].re;
        if s > SUPP_CLAMP {
            tr_rho_ln_sigma += weight * s.ln();
        } else {
            off_support_mass += weight.max(0.0);
        }
    }
    if off_support_mass > SUPP_TOL {
        return Ok(RelativeEntropy::Infinite);
    }
    Ok(RelativeEntropy::Finite(tr_rho_ln_rho - tr_rho_ln_sigma))
}

/// Divergence-based Fisher information of a state family `θ ↦ U(θ) ρ U(θ)†`:
/// the second derivative of `θ ↦ S(ρ‖ρ_θ)` at 0 via a 5-point central
/// stencil. Returns the estimate and a condition score (relative spread
/// between the 5-point and 3-point estimates).
pub fn fisher_second_derivative<F>(
    state: &TruncatedState,
    family: F,
    step: f64,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<Array2<C64>>,
{
    if step <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let min_eig = state.min_eigenvalue()?;
    if min_eig < FULL_RANK_FLOOR {
        return Err(Error::NotFullRank { min_eig });
    }
    let eval = |theta: f64| -> Result<f64> {
        let u = family(theta)?;
        let displaced =
            TruncatedState::from_trusted(linalg::conjugate(&u, state.rho()), state.cutoff().clone());
        match relative_entropy(state, &displaced)? {
            RelativeEntropy::Finite(v) => Ok(v),
            RelativeEntropy::Infinite => Err(Error::DivergenceInfinite),
        }
    };
    let f1 = eval(step)?;
    let f_1 = eval(-step)?;
    let f2 = eval(2.0 * step)?;
    let f_2 = eval(-2.0 * step)?;
    // f(0) = S(ρ‖ρ) = 0.
    let five = (-f2 + 16.0 * f1 + 16.0 * f_1 - f_2) / (12.0 * step * step);
    let three = (f1 + f_1) / (step * step);
    let condition = (five - three).abs() / five.abs().max(1e-12);
    Ok((five, condition))
}

/// Fisher information along the displacement family of quadrature `i`.
pub fn fisher_along(state: &TruncatedState, index: QuadratureIndex, step: f64) -> Result<f64> {
    let cutoff = state.cutoff().clone();
    let (mut value, condition) =
        fisher_second_derivative(state, |t| displacement_along(&cutoff, index, t), step)?;
    if condition > 0.05 {
        // Richardson-style refinement at half step when the stencil looks shaky.
        let (refined, _) =
            fisher_second_derivative(state, |t| displacement_along(&cutoff, index, t), step / 2.0)?;
        value = refined;
    }
    Ok(value)
}

/// Per-quadrature Fisher information and the total `J̃ = Σᵢ J`.
#[derive(Debug, Clone, Serialize)]
pub struct FisherResult {
    pub per_quadrature: Vec<f64>,
    pub total: f64,
    pub step: f64,
    /// Worst condition score across the quadrature directions.
    pub condition: f64,
    pub fd_tol: f64,
}

/// Sum the displacement-family Fisher information over all 2n quadratures.
pub fn fisher_total(state: &TruncatedState, step: f64) -> Result<FisherResult> {
    let cutoff = state.cutoff().clone();
    let mut per = Vec::with_capacity(2 * state.mode_count());
    let mut worst_condition = 0.0f64;
    for index in QuadratureIndex::all(state.mode_count()) {
        let (mut value, condition) =
            fisher_second_derivative(state, |t| displacement_along(&cutoff, index, t), step)?;
        if condition > 0.05 {
            let (refined, _) = fisher_second_derivative(
                state,
                |t| displacement_along(&cutoff, index, t),
                step / 2.0,
            )?;
            value = refined;
        }
        if value < -FD_TOL {
            return Err(Error::InvalidParameter(format!(
                "Fisher information {value:.3e} below −fd_tol along {index:?}"
            )));
        }
        worst_condition = worst_condition.max(condition);
        per.push(value);
    }
    let total = per.iter().sum();
    Ok(FisherResult {
        per_quadrature: per,
        total,
        step,
        condition: worst_condition,
        fd_tol: FD_TOL,
    })
}

/// Both sides of the de Bruijn identity and their relative error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DeBruijnReport {
    /// Finite-difference entropy production rate at t = 0.
    pub entropy_rate: f64,
    /// `debruijn_scale · J̃(ρ)`.
    pub fisher_side: f64,
    pub relative_error: f64,
    pub dt: f64,
    pub step: f64,
}

/// Compare the entropy production rate under diffusion with the scaled total
/// Fisher information. The rate uses a second-order forward stencil (the
/// semigroup only runs forward in time).
pub fn de_bruijn_check(state: &TruncatedState, dt: f64, step: f64) -> Result<DeBruijnReport> {
    let min_eig = state.min_eigenvalue()?;
    if min_eig < FULL_RANK_FLOOR {
        return Err(Error::NotFullRank { min_eig });
    }
    let engine = DiffusionEngine::auto(state.cutoff())?;
    let s0 = von_neumann_entropy(state)?;
    let s1 = von_neumann_entropy(&engine.evolve(state, dt)?)?;
    let s2 = von_neumann_entropy(&engine.evolve(state, 2.0 * dt)?)?;
    let entropy_rate = (-3.0 * s0 + 4.0 * s1 - s2) / (2.0 * dt);
    let fisher = fisher_total(state, step)?;
    let fisher_side = LEDGER.debruijn_scale * fisher.total;
    let relative_error = (entropy_rate - fisher_side).abs() / fisher_side.abs().max(1e-12);
    Ok(DeBruijnReport {
        entropy_rate,
        fisher_side,
        relative_error,
        dt,
        step,
    })
}

/// Stam-inequality report for a pair of inputs at transmissivity ½.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StamReport {
    pub fisher_x: f64,
    pub fisher_y: f64,
    pub fisher_z: f64,
    /// `2/J̃(Z)`.
    pub lhs: f64,
    /// `1/J̃(X) + 1/J̃(Y)`.
    pub rhs: f64,
    /// `lhs − rhs`; nonnegative up to finite-difference error.
    pub margin: f64,
    pub step: f64,
}

/// Check `2/J̃(X⊞½Y) ≥ 1/J̃(X) + 1/J̃(Y)` on full-rank inputs.
pub fn stam_check(x: &TruncatedState, y: &TruncatedState, step: f64) -> Result<StamReport> {
    let z = beam_splitter_output(x, y, 0.5)?;
    let jx = fisher_total(x, step)?.total;
    let jy = fisher_total(y, step)?.total;
    let jz = fisher_total(&z, step)?.total;
    let lhs = 2.0 / jz;
    let rhs = 1.0 / jx + 1.0 / jy;
    Ok(StamReport {
        fisher_x: jx,
        fisher_y: jy,
        fisher_z: jz,
        lhs,
        rhs,
        margin: lhs - rhs,
        step,
    })
}

/// Check the Fisher convexity `J̃(X⊞λY) ≤ λJ̃(X) + (1−λ)J̃(Y)`; returns the
/// margin `λJ̃(X) + (1−λ)J̃(Y) − J̃(Z)`.
pub fn convexity_check(
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
    step: f64,
) -> Result<f64> {
    let z = beam_splitter_output(x, y, lambda)?;
    let jx = fisher_total(x, step)?.total;
    let jy = fisher_total(y, step)?.total;
    let jz = fisher_total(&z, step)?.total;
    Ok(lambda * jx + (1.0 - lambda) * jy - jz)
}
