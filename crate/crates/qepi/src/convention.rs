//! Phase-space conventions, fixed once and embedded in every serialized output.
//!
//! The quadratures are `Q = a + a†` and `P = i(a† − a)`, so `[Q, P] = 2i`
//! and the harmonic Hamiltonian `H = ½(Q² + P²)` equals `2N + 1` with `N`
//! the number operator. Everything downstream (vacuum variance, diffusion
//! rate, the de Bruijn proportionality constant, Wigner normalization,
//! classical-noise width) is pinned against that choice and recorded here
//! so a different commutator inference would change constants in exactly
//! one place.

use serde::{Deserialize, Serialize};

/// The numerical constants implied by the `[Q, P] = 2i` convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConventionLedger {
    /// `c_R` in `[Q, P] = i·c_R`.
    pub commutator_scale: f64,
    /// Per-quadrature variance of the vacuum, `⟨0|Q²|0⟩ = c_R/2`.
    pub vacuum_variance: f64,
    /// Constant relating the entropy production rate under diffusion to the
    /// summed divergence-based Fisher information: `dS/dt = debruijn_scale·J̃`.
    /// Calibrated on thermal states, where both sides have closed forms; with
    /// displacement generators `D_Q(θ) = exp(−iθP/2)`, `D_P(θ) = exp(+iθQ/2)`
    /// the thermal calibration gives exactly 1.
    pub debruijn_scale: f64,
    /// Per-quadrature covariance growth rate under the diffusion semigroup:
    /// `γ(t) = γ(0) + diffusion_rate·t·I`. Calibrated from the generator's
    /// action on the vacuum covariance; `−¼Σᵢ[Rᵢ,[Rᵢ,·]]` gives exactly 2.
    pub diffusion_rate: f64,
    /// Wigner value at the origin per unit parity expectation:
    /// `W(0,0) = wigner_origin_scale·⟨Π⟩`. Fixed by the parity identity.
    pub wigner_origin_scale: f64,
    /// Per-quadrature variance of the random displacement implementing the
    /// classical noise channel `E_ν`, per unit ν. Calibrated so that
    /// `E_ν(vacuum) = thermal(ν)`.
    pub noise_variance_per_nu: f64,
}

impl ConventionLedger {
    /// The ledger for the `[Q, P] = 2i` convention used throughout.
    pub const fn standard() -> Self {
        ConventionLedger {
            commutator_scale: 2.0,
            vacuum_variance: 1.0,
            debruijn_scale: 1.0,
            diffusion_rate: 2.0,
            wigner_origin_scale: 1.0 / (2.0 * std::f64::consts::PI),
            noise_variance_per_nu: 2.0,
        }
    }

    /// Internal consistency of the recorded constants.
    pub fn is_consistent(&self) -> bool {
        self.vacuum_variance == self.commutator_scale / 2.0
            && self.commutator_scale > 0.0
            && self.debruijn_scale > 0.0
            && self.diffusion_rate > 0.0
            && self.wigner_origin_scale > 0.0
            && self.noise_variance_per_nu > 0.0
    }
}

impl Default for ConventionLedger {
    fn default() -> Self {
        Self::standard()
    }
}

/// The ledger instance every module consults.
pub const LEDGER: ConventionLedger = ConventionLedger::standard();

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_is_consistent() {
        assert!(LEDGER.is_consistent());
        assert_eq!(LEDGER.vacuum_variance, LEDGER.commutator_scale / 2.0);
    }

    #[test]
    fn ledger_serializes_round_trip() {
        let s = serde_json::to_string(&LEDGER).unwrap();
        let back: ConventionLedger = serde_json::from_str(&s).unwrap();
        assert_eq!(back, LEDGER);
    }
}
