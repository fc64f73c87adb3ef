//! Closed-form Gaussian-state computations on covariance matrices, used as an
//! independent oracle for every Fock-space result on Gaussian inputs.
//!
//! Under the ledger convention the vacuum covariance is the identity, a
//! thermal state with mean photon `N` has `γ = (2N+1)I`, and the uncertainty
//! relation reads `γ + iJ ⪰ 0` (symplectic eigenvalues at least 1).

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::channels::ChannelSpec;
use crate::convention::{ConventionLedger, LEDGER};
use crate::error::{Error, Result};
use crate::fock::TruncatedState;
use crate::information::von_neumann_entropy;

/// Tolerance on symmetry and uncertainty checks for covariance inputs.
const COV_TOL: f64 = 1e-9;

/// Mean vector and covariance matrix of an n-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceState {
    mean: Array1<f64>,
    gamma: Array2<f64>,
}

impl CovarianceState {
    pub fn new(mean: Array1<f64>, gamma: Array2<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 || gamma.dim() != (dim, dim) {
            return Err(Error::InvalidParameter(format!(
                "covariance shapes inconsistent: mean {dim}, gamma {:?}",
                gamma.dim()
            )));
        }
        let sym_defect = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| (gamma[(i, j)] - gamma[(j, i)]).abs())
            .fold(0.0f64, f64::max);
        if sym_defect > COV_TOL {
            return Err(Error::InvalidParameter(format!(
                "covariance matrix not symmetric (defect {sym_defect:.3e})"
            )));
        }
        let state = CovarianceState { mean, gamma };
        let nu_min = state
            .symplectic_eigenvalues()?
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if nu_min < 1.0 - COV_TOL {
            return Err(Error::UncertaintyViolation { nu_min });
        }
        Ok(state)
    }

    /// Vacuum on `n` modes: zero mean, identity covariance.
    pub fn vacuum(modes: usize) -> Self {
        CovarianceState {
            mean: Array1::zeros(2 * modes),
            gamma: Array2::eye(2 * modes),
        }
    }

    /// Single-mode thermal state: `γ = (2N+1)I`.
    pub fn thermal(n: f64) -> Self {
        CovarianceState {
            mean: Array1::zeros(2),
            gamma: Array2::eye(2) * (2.0 * n + 1.0),
        }
    }

    /// Single-mode coherent state: vacuum covariance, displaced mean.
    pub fn coherent(alpha: C64) -> Self {
        let mut mean = Array1::zeros(2);
        mean[0] = 2.0 * alpha.re;
        mean[1] = 2.0 * alpha.im;
        CovarianceState {
            mean,
            gamma: Array2::eye(2),
        }
    }

    /// Measured moments of a Fock-space state (no Gaussianity assumed).
    pub fn from_state(state: &TruncatedState) -> Self {
        let (mean, gamma) = state.moments();
        CovarianceState { mean, gamma }
    }

    /// Block-diagonal product of two subsystems.
    pub fn product(&self, other: &CovarianceState) -> CovarianceState {
        let (na, nb) = (self.mean.len(), other.mean.len());
        let mut mean = Array1::zeros(na + nb);
        mean.slice_mut(ndarray::s![..na]).assign(&self.mean);
        mean.slice_mut(ndarray::s![na..]).assign(&other.mean);
        let mut gamma = Array2::zeros((na + nb, na + nb));
        gamma
            .slice_mut(ndarray::s![..na, ..na])
            .assign(&self.gamma);
        gamma
            .slice_mut(ndarray::s![na.., na..])
            .assign(&other.gamma);
        CovarianceState { mean, gamma }
    }

    pub fn mode_count(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &Array1<f64> {
        &self.mean
    }

    pub fn gamma(&self) -> &Array2<f64> {
        &self.gamma
    }

    /// Symplectic eigenvalues: the positive spectrum of `i·γ^{1/2}·J·γ^{1/2}`.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let dim = self.mean.len();
        let (vals, vecs) = self
            .gamma
            .eigh(UPLO::Lower)
            .map_err(|e| Error::InvalidParameter(format!("covariance eigensolver: {e}")))?;
        if vals.iter().any(|&v| v < -COV_TOL) {
            return Err(Error::UncertaintyViolation {
                nu_min: vals.iter().cloned().fold(f64::INFINITY, f64::min),
            });
        }
        // γ^{1/2}
        let mut sqrt = Array2::<f64>::zeros((dim, dim));
        for k in 0..dim {
            let s = vals[k].max(0.0).sqrt();
            for i in 0..dim {
                for j in 0..dim {
                    sqrt[(i, j)] += s * vecs[(i, k)] * vecs[(j, k)];
                }
            }
        }
        let j_mat = symplectic_form(dim / 2);
        let a = sqrt.dot(&j_mat).dot(&sqrt);
        // i·A is Hermitian for real antisymmetric A.
        let mut herm = Array2::<C64>::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                herm[(i, j)] = C64::new(0.0, a[(i, j)]);
            }
        }
        let (nu, _) = herm
            .eigh(UPLO::Lower)
            .map_err(|e| Error::InvalidParameter(format!("symplectic eigensolver: {e}")))?;
        let mut out: Vec<f64> = nu.iter().cloned().filter(|&v| v > 0.0).collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CovarianceRecord {
            convention: LEDGER,
            mean: self.mean.to_vec(),
            gamma: self
                .gamma
                .rows()
                .into_iter()
                .map(|r| r.to_vec())
                .collect(),
        })
        .expect("covariance serialization cannot fail")
    }
}

#[derive(Debug, Serialize)]
struct CovarianceRecord {
    convention: ConventionLedger,
    mean: Vec<f64>,
    gamma: Vec<Vec<f64>>,
}

/// The symplectic form `J = [[0,1],[−1,0]]^{⊕n}`.
pub fn symplectic_form(modes: usize) -> Array2<f64> {
    let mut j = Array2::<f64>::zeros((2 * modes, 2 * modes));
    for m in 0..modes {
        j[(2 * m, 2 * m + 1)] = 1.0;
        j[(2 * m + 1, 2 * m)] = -1.0;
    }
    j
}

/// Entropy of the Gaussian state with covariance `cov`, in nats:
/// `Σₖ g((νₖ − 1)/2)` over the symplectic eigenvalues.
pub fn gaussian_entropy(cov: &CovarianceState) -> Result<f64> {
    let nus = cov.symplectic_eigenvalues()?;
    if nus.len() != cov.mode_count() {
        return Err(Error::InvalidParameter(format!(
            "expected {} symplectic eigenvalues, found {}",
            cov.mode_count(),
            nus.len()
        )));
    }
    let mut total = 0.0;
    for &nu in &nus {
        if nu < 1.0 - COV_TOL {
            return Err(Error::UncertaintyViolation { nu_min: nu });
        }
        total += crate::bounds::g(((nu - 1.0) / 2.0).max(0.0))?;
    }
    Ok(total)
}

/// Beam-splitter action on moments: `mean_Z = √λ·mean_a + √(1−λ)·mean_b`,
/// `γ_Z = λγ_a + (1−λ)γ_b`.
pub fn oracle_beam_splitter(
    a: &CovarianceState,
    b: &CovarianceState,
    lambda: f64,
) -> Result<CovarianceState> {
    if a.mode_count() != b.mode_count() {
        return Err(Error::InvalidParameter(
            "beam splitter arms need equal mode counts".into(),
        ));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity must lie in [0,1], got {lambda}"
        )));
    }
    Ok(CovarianceState {
        mean: &a.mean * lambda.sqrt() + &b.mean * (1.0 - lambda).sqrt(),
        gamma: &a.gamma * lambda + &b.gamma * (1.0 - lambda),
    })
}

/// Channel action on moments.
pub fn oracle_channel(cov: &CovarianceState, spec: &ChannelSpec) -> Result<CovarianceState> {
    spec.validate()?;
    let dim = cov.mean.len();
    let eye = Array2::<f64>::eye(dim);
    Ok(match *spec {
        ChannelSpec::PureLoss { lambda } => CovarianceState {
            mean: &cov.mean * lambda.sqrt(),
            gamma: &cov.gamma * lambda + &eye * (1.0 - lambda),
        },
        ChannelSpec::Thermal { lambda, n_env } => CovarianceState {
            mean: &cov.mean * lambda.sqrt(),
            gamma: &cov.gamma * lambda + &eye * ((1.0 - lambda) * (2.0 * n_env + 1.0)),
        },
        ChannelSpec::ClassicalNoise { nu } => CovarianceState {
            mean: cov.mean.clone(),
            gamma: &cov.gamma + &eye * (LEDGER.noise_variance_per_nu * nu),
        },
        ChannelSpec::Amplifier { gain } => CovarianceState {
            mean: &cov.mean * gain.sqrt(),
            gamma: &cov.gamma * gain + &eye * (gain - 1.0),
        },
    })
}

/// Diffusion action on moments: `γ → γ + diffusion_rate·t·I`, mean unchanged.
pub fn oracle_diffusion(cov: &CovarianceState, t: f64) -> CovarianceState {
    let dim = cov.mean.len();
    CovarianceState {
        mean: cov.mean.clone(),
        gamma: &cov.gamma + &(Array2::<f64>::eye(dim) * (LEDGER.diffusion_rate * t)),
    }
}

/// Comparison of a Fock-space state against its covariance-oracle counterpart.
#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub entropy_fock: f64,
    pub entropy_gaussian: f64,
    pub entropy_diff: f64,
    pub mean_max_diff: f64,
    pub gamma_max_diff: f64,
}

impl CrossValidation {
    pub fn passes(&self, entropy_tol: f64, moment_tol: f64) -> bool {
        self.entropy_diff <= entropy_tol
            && self.mean_max_diff <= moment_tol
            && self.gamma_max_diff <= moment_tol
    }
}

/// Compare entropy and first/second moments of a truncated state believed to
/// be Gaussian against the covariance oracle.
pub fn cross_validate(state: &TruncatedState, cov: &CovarianceState) -> Result<CrossValidation> {
    let entropy_fock = von_neumann_entropy(state)?;
    let entropy_gaussian = gaussian_entropy(cov)?;
    let (mean, gamma) = state.moments();
    let mean_max_diff = mean
        .iter()
        .zip(cov.mean.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let gamma_max_diff = gamma
        .iter()
        .zip(cov.gamma.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    Ok(CrossValidation {
        entropy_fock,
        entropy_gaussian,
        entropy_diff: (entropy_fock - entropy_gaussian).abs(),
        mean_max_diff,
        gamma_max_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::g;
    use crate::fock::make_thermal;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn gaussian_entropy_basics() {
        assert_abs_diff_eq!(
            gaussian_entropy(&CovarianceState::vacuum(1)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // Single symplectic eigenvalue 2N+1 → g(N).
        for &n in &[0.5, 1.0, 2.0] {
            assert_abs_diff_eq!(
                gaussian_entropy(&CovarianceState::thermal(n)).unwrap(),
                g(n).unwrap(),
                epsilon = 1e-12
            );
        }
        // Two-mode product sums the single-mode entropies.
        let prod = CovarianceState::thermal(1.0).product(&CovarianceState::thermal(2.0));
        assert_abs_diff_eq!(
            gaussian_entropy(&prod).unwrap(),
            g(1.0).unwrap() + g(2.0).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn uncertainty_violations_are_rejected() {
        let bad = CovarianceState::new(Array1::zeros(2), Array2::eye(2) * 0.5);
        assert!(matches!(bad, Err(Error::UncertaintyViolation { .. })));
    }

    #[test]
    fn oracle_beam_splitter_cases() {
        let a = CovarianceState::thermal(1.0);
        let b = CovarianceState::thermal(3.0);
        let z = oracle_beam_splitter(&a, &b, 1.0).unwrap();
        assert_eq!(z, a);
        let vacua = oracle_beam_splitter(
            &CovarianceState::vacuum(1),
            &CovarianceState::vacuum(1),
            0.3,
        )
        .unwrap();
        assert_eq!(vacua, CovarianceState::vacuum(1));
        // thermal(1) ⊞_{1/2} thermal(3): ½·3I + ½·7I = 5I, i.e. thermal(2).
        let mixed = oracle_beam_splitter(&a, &b, 0.5).unwrap();
        assert_abs_diff_eq!(mixed.gamma()[(0, 0)], 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            gaussian_entropy(&mixed).unwrap(),
            g(2.0).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn oracle_channel_cases() {
        let vac = CovarianceState::vacuum(1);
        let amp1 = oracle_channel(&vac, &ChannelSpec::Amplifier { gain: 1.0 }).unwrap();
        assert_eq!(amp1, vac);

        let thermal_out = oracle_channel(
            &vac,
            &ChannelSpec::Thermal {
                lambda: 0.5,
                n_env: 2.0,
            },
        )
        .unwrap();
        assert_abs_diff_eq!(thermal_out.gamma()[(0, 0)], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            gaussian_entropy(&thermal_out).unwrap(),
            g(1.0).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn amplifier_decomposition_is_exact() {
        // E_{λ,N_E} = A_G ∘ E_{a,0} with G = (1−λ)N_E+1, a = λ/G, as an
        // identity of covariance maps, on random valid covariances.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let lambda: f64 = rng.gen_range(0.05..0.95);
            let n_env: f64 = rng.gen_range(0.0..6.0);
            // Random single-mode covariance: γ = (1+a)I + b·σ with ν ≥ 1.
            let spread: f64 = rng.gen_range(0.0..3.0);
            let skew: f64 = rng.gen_range(-0.5..0.5) * spread.min(1.0);
            let mut gamma = Array2::<f64>::eye(2) * (1.0 + spread);
            gamma[(0, 1)] = skew;
            gamma[(1, 0)] = skew;
            let mut mean = Array1::<f64>::zeros(2);
            mean[0] = rng.gen_range(-2.0..2.0);
            mean[1] = rng.gen_range(-2.0..2.0);
            let cov = CovarianceState::new(mean, gamma).unwrap();

            let direct = oracle_channel(&cov, &ChannelSpec::Thermal { lambda, n_env }).unwrap();
            let gain = (1.0 - lambda) * n_env + 1.0;
            let a = lambda / gain;
            let staged = oracle_channel(
                &oracle_channel(&cov, &ChannelSpec::Thermal { lambda: a, n_env: 0.0 }).unwrap(),
                &ChannelSpec::Amplifier { gain },
            )
            .unwrap();
            for i in 0..2 {
                assert_abs_diff_eq!(direct.mean()[i], staged.mean()[i], epsilon = 1e-13);
                for j in 0..2 {
                    assert_abs_diff_eq!(
                        direct.gamma()[(i, j)],
                        staged.gamma()[(i, j)],
                        epsilon = 1e-13
                    );
                }
            }
        }
    }

    #[test]
    fn diffusion_oracle_matches_thermalization() {
        let vac = CovarianceState::vacuum(1);
        let out = oracle_diffusion(&vac, 0.0);
        assert_eq!(out, vac);
        // Vacuum at time t is thermal with mean photon rate·t/2 = t.
        for &t in &[0.5, 2.0] {
            let out = oracle_diffusion(&vac, t);
            assert_abs_diff_eq!(out.gamma()[(0, 0)], 1.0 + 2.0 * t, epsilon = 1e-14);
            assert_abs_diff_eq!(
                gaussian_entropy(&out).unwrap(),
                g(t).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn cross_validation_on_thermal_states() {
        let state = make_thermal(1.0, 60).unwrap();
        let report = cross_validate(&state, &CovarianceState::thermal(1.0)).unwrap();
        assert!(report.entropy_diff < 1e-8, "entropy diff {}", report.entropy_diff);
        assert!(report.mean_max_diff < 1e-10);
        assert!(report.gamma_max_diff < 1e-6);

        let vac_report = cross_validate(
            &crate::fock::make_fock(0, 10).unwrap(),
            &CovarianceState::vacuum(1),
        )
        .unwrap();
        assert!(vac_report.entropy_diff < 1e-12);
        assert!(vac_report.gamma_max_diff < 1e-12);
    }
}
