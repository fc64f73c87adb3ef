//! The beam-splitter combination `X ⊞_λ Y` and the additive noise channels
//! built from it: thermal noise, classical (random-displacement) noise, pure
//! loss, and the amplifier parameterization used by the covariance oracle.
//!
//! The beam-splitter unitary is the exponential of the mode-mixing generator
//! `Σᵢ(aᵢ†bᵢ − aᵢbᵢ†)` with angle `arccos(√λ)`, which combines quadratures
//! with positive signs: `R^Z = √λ R^X + √(1−λ) R^Y`. The other output arm
//! carries `√λ R^Y − √(1−λ) R^X`; it is exposed for tests but no inequality
//! here constrains it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use ndarray::Array2;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::convention::LEDGER;
use crate::error::{Error, Result};
use crate::fock::{
    annihilation, embed_single, leakage_defect, make_thermal, partial_trace, quadrature_single,
    tensor, FockCutoff, QuadratureKind, TruncatedState, LEAK_TOL, TAIL_TOL,
};
use crate::linalg;

/// Default order of the Gauss–Hermite product rule for displacement mixtures.
pub const DEFAULT_GH_ORDER: usize = 21;

/// Parameterization of the additive noise channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    PureLoss {
        lambda: f64,
    },
    Thermal {
        lambda: f64,
        #[serde(rename = "N_E")]
        n_env: f64,
    },
    ClassicalNoise {
        nu: f64,
    },
    Amplifier {
        #[serde(rename = "G")]
        gain: f64,
    },
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelSpec::PureLoss { lambda } | ChannelSpec::Thermal { lambda, .. }
                if !(0.0..=1.0).contains(&lambda) =>
            {
                Err(Error::InvalidParameter(format!(
                    "transmissivity must lie in [0,1], got {lambda}"
                )))
            }
            ChannelSpec::Thermal { n_env, .. } if n_env < 0.0 => Err(Error::InvalidParameter(
                format!("environment photon number must be nonnegative, got {n_env}"),
            )),
            ChannelSpec::ClassicalNoise { nu } if nu <= 0.0 => Err(Error::InvalidParameter(
                format!("classical noise variance must be positive, got {nu}"),
            )),
            ChannelSpec::Amplifier { gain } if gain < 1.0 => Err(Error::InvalidParameter(
                format!("amplifier gain must be at least 1, got {gain}"),
            )),
            _ => Ok(()),
        }
    }
}

/* Beam splitter **************************************************************/

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity must lie in [0,1], got {lambda}"
        )));
    }
    Ok(())
}

type BsKey = (Vec<usize>, u64);
static BS_CACHE: OnceLock<Mutex<HashMap<BsKey, Arc<Array2<C64>>>>> = OnceLock::new();

/// Two-arm mixing unitary on the joint space. The first `arm_modes` modes are
/// the X arm, the remainder the Y arm (paired in order).
pub fn beam_splitter_unitary(
    joint: &FockCutoff,
    arm_modes: usize,
    lambda: f64,
) -> Result<Arc<Array2<C64>>> {
    check_lambda(lambda)?;
    if joint.mode_count() != 2 * arm_modes {
        return Err(Error::InvalidParameter(format!(
            "joint space has {} modes, expected {}",
            joint.mode_count(),
            2 * arm_modes
        )));
    }
    let key: BsKey = (joint.dims().to_vec(), lambda.to_bits());
    let cache = BS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(u));
    }

    let d = joint.total_dim();
    let phi = lambda.sqrt().clamp(0.0, 1.0).acos();
    // Hermitian generator H = i·Σ(a†b − ab†); U = exp(−iφH).
    let mut h = Array2::<C64>::zeros((d, d));
    for m in 0..arm_modes {
        let a = embed_single(joint, m, &annihilation(joint.dims()[m]));
        let b = embed_single(joint, arm_modes + m, &annihilation(joint.dims()[arm_modes + m]));
        let term = linalg::dagger(&a).dot(&b) - a.dot(&linalg::dagger(&b));
        h = h + term.mapv(|z| z * C64::new(0.0, 1.0));
    }
    let u = Arc::new(linalg::expi_hermitian(&h, -phi)?);

    let mut guard = cache.lock().unwrap();
    if guard.len() >= 8 {
        let evict = guard.keys().next().cloned();
        if let Some(k) = evict {
            guard.remove(&k);
        }
    }
    guard.insert(key, Arc::clone(&u));
    Ok(u)
}

/// Mix two states (allowing different per-arm cutoffs) and keep the Z arm.
pub(crate) fn mix_one_arm(
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
) -> Result<TruncatedState> {
    if x.mode_count() != y.mode_count() {
        return Err(Error::CutoffMismatch {
            left: x.cutoff().dims().to_vec(),
            right: y.cutoff().dims().to_vec(),
        });
    }
    let joint = tensor(x, y);
    let u = beam_splitter_unitary(joint.cutoff(), x.mode_count(), lambda)?;
    let mixed = linalg::conjugate(&u, joint.rho());
    let mixed = TruncatedState::from_trusted(mixed, joint.cutoff().clone());
    partial_trace(&mixed, &(0..x.mode_count()).collect::<Vec<_>>())
}

/// `X ⊞_λ Y`: the Z output arm of a transmissivity-λ beam splitter.
pub fn beam_splitter_output(
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
) -> Result<TruncatedState> {
    if x.cutoff() != y.cutoff() {
        return Err(Error::CutoffMismatch {
            left: x.cutoff().dims().to_vec(),
            right: y.cutoff().dims().to_vec(),
        });
    }
    mix_one_arm(x, y, lambda)
}

/// Both output arms `(Z, W)`.
pub fn beam_splitter_both_arms(
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
) -> Result<(TruncatedState, TruncatedState)> {
    if x.cutoff() != y.cutoff() {
        return Err(Error::CutoffMismatch {
            left: x.cutoff().dims().to_vec(),
            right: y.cutoff().dims().to_vec(),
        });
    }
    let n = x.mode_count();
    let joint = tensor(x, y);
    let u = beam_splitter_unitary(joint.cutoff(), n, lambda)?;
    let mixed = linalg::conjugate(&u, joint.rho());
    let mixed = TruncatedState::from_trusted(mixed, joint.cutoff().clone());
    let z = partial_trace(&mixed, &(0..n).collect::<Vec<_>>())?;
    let w = partial_trace(&mixed, &(n..2 * n).collect::<Vec<_>>())?;
    Ok((z, w))
}

/// Input mass in total-photon sectors the output cutoff cannot hold. The
/// mixing unitary conserves photon number per mode pair, so this bounds the
/// mass the truncation can corrupt; it is exactly zero when the combined
/// support fits under the cutoff.
pub fn beam_splitter_leakage(x: &TruncatedState, y: &TruncatedState) -> f64 {
    let dims_x = x.cutoff().dims();
    let diag_x: Vec<f64> = x.rho().diag().iter().map(|z| z.re).collect();
    let diag_y: Vec<f64> = y.rho().diag().iter().map(|z| z.re).collect();
    // Per-pair photon totals; for n = 1 this is the exact sector mass.
    let mut leak = 0.0;
    if x.mode_count() == 1 {
        let d = dims_x[0];
        for (na, pa) in diag_x.iter().enumerate() {
            for (nb, pb) in diag_y.iter().enumerate() {
                if na + nb >= d {
                    leak += pa * pb;
                }
            }
        }
    } else {
        // Conservative bound for multi-mode arms: probability either arm has
        // any mode at its top level.
        leak = x.top_level_mass() + y.top_level_mass();
    }
    leak
}

/// `X ⊞_λ Y` together with the recorded truncation-leakage estimate.
pub fn beam_splitter_output_with_leakage(
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
) -> Result<(TruncatedState, f64)> {
    let z = beam_splitter_output(x, y, lambda)?;
    Ok((z, beam_splitter_leakage(x, y)))
}

/* Thermal noise channel ******************************************************/

/// Smallest environment cutoff with geometric tail below `TAIL_TOL`.
fn thermal_env_cutoff(n_env: f64) -> usize {
    if n_env <= 0.0 {
        return 2;
    }
    let q = n_env / (n_env + 1.0);
    ((TAIL_TOL.ln() / q.ln()).ceil() as usize + 2).max(2)
}

/// Highest Fock level of a single-mode state carrying mass above 1e−14.
fn effective_support(state: &TruncatedState) -> usize {
    let diag = state.rho().diag();
    (0..diag.len())
        .rev()
        .find(|&i| diag[i].re > 1e-14)
        .unwrap_or(0)
}

/// Thermal noise channel `E_{λ,N_E}` on a single-mode state, with the
/// environment cutoff chosen automatically from `N_E`, the tail budget, and
/// the signal support (the environment must hold the photons it receives).
pub fn apply_thermal(state: &TruncatedState, lambda: f64, n_env: f64) -> Result<TruncatedState> {
    let env_cutoff = thermal_env_cutoff(n_env) + effective_support(state) + 1;
    apply_thermal_with_env(state, lambda, n_env, env_cutoff)
}

/// Thermal noise channel with an explicit environment cutoff.
pub fn apply_thermal_with_env(
    state: &TruncatedState,
    lambda: f64,
    n_env: f64,
    env_cutoff: usize,
) -> Result<TruncatedState> {
    check_lambda(lambda)?;
    if state.mode_count() != 1 {
        return Err(Error::InvalidParameter(
            "thermal channel acts on single-mode states".into(),
        ));
    }
    let env = make_thermal(n_env, env_cutoff)?;
    mix_one_arm(state, &env, lambda)
}

/* Gauss–Hermite rule *********************************************************/

/// Nodes and weights for `∫ e^{−x²} f(x) dx ≈ Σ wᵢ f(xᵢ)`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// Golub–Welsch construction from the Jacobi matrix (off-diagonal √(k/2)).
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidParameter(
                "quadrature order must be at least 2".into(),
            ));
        }
        let mut jacobi = Array2::<f64>::zeros((order, order));
        for k in 1..order {
            let off = (k as f64 / 2.0).sqrt();
            jacobi[(k - 1, k)] = off;
            jacobi[(k, k - 1)] = off;
        }
        let (vals, vecs) = jacobi
            .eigh(UPLO::Lower)
            .map_err(|e| Error::InvalidParameter(format!("quadrature eigensolver: {e}")))?;
        let total = std::f64::consts::PI.sqrt();
        let mut weights: Vec<f64> = (0..order)
            .map(|i| total * vecs[(0, i)] * vecs[(0, i)])
            .collect();
        // Renormalize so the rule integrates the weight function exactly;
        // this keeps displacement mixtures trace preserving to roundoff.
        let sum: f64 = weights.iter().sum();
        for w in &mut weights {
            *w *= total / sum;
        }
        Ok(GaussHermite {
            nodes: vals.to_vec(),
            weights,
        })
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/* Classical noise channel ****************************************************/

pub(crate) enum LeakPolicy {
    /// Reject when the weight-averaged node leakage exceeds the budget.
    WeightedBudget(f64),
    /// No enforcement (used by the diffusion backend, which has its own
    /// time-budget rule).
    Unchecked,
}

/// Gaussian mixture of phase-space displacements with per-quadrature
/// displacement variance `sigma2`, applied to every mode.
pub(crate) fn gaussian_displacement_mix(
    state: &TruncatedState,
    sigma2: f64,
    order: usize,
    policy: LeakPolicy,
) -> Result<TruncatedState> {
    if sigma2 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "displacement variance must be nonnegative, got {sigma2}"
        )));
    }
    if sigma2 == 0.0 {
        return Ok(state.clone());
    }
    let rule = GaussHermite::new(order)?;
    let scale = (2.0 * sigma2).sqrt();
    let cutoff = state.cutoff().clone();
    let norm: f64 = {
        let s: f64 = rule.weights.iter().sum();
        s * s
    };

    let mut current = state.rho().clone();
    for mode in 0..cutoff.mode_count() {
        let d = cutoff.dims()[mode];
        let q = quadrature_single(d, QuadratureKind::Q);
        let p = quadrature_single(d, QuadratureKind::P);

        // Single-mode displacement unitaries per node pair.
        let mut weighted_defect = 0.0;
        let mut max_defect = 0.0f64;
        let mut ops: Vec<(f64, Array2<C64>)> = Vec::with_capacity(order * order);
        for (i, &xi) in rule.nodes.iter().enumerate() {
            for (j, &xj) in rule.nodes.iter().enumerate() {
                let dq = scale * xi;
                let dp = scale * xj;
                let generator = (&p.mapv(|z| z * dq) - &q.mapv(|z| z * dp)).mapv(|z| z * 0.5);
                let u = linalg::expi_hermitian(&generator, -1.0)?;
                let w = rule.weights[i] * rule.weights[j] / norm;
                let defect = leakage_defect(&u, d);
                weighted_defect += w * defect;
                max_defect = max_defect.max(defect);
                ops.push((w, u));
            }
        }
        if let LeakPolicy::WeightedBudget(budget) = policy {
            if weighted_defect > budget {
                let added = sigma2 / 2.0; // photons added per unit of γ-growth
                let suggested = d + (4.0 * added + 6.0 * added.sqrt() + 12.0).ceil() as usize;
                return Err(Error::DisplacementLeakage {
                    defect: weighted_defect,
                    budget,
                    suggested,
                });
            }
        }

        let mut next = Array2::<C64>::zeros(current.dim());
        for (w, u_small) in ops {
            let u = embed_single(&cutoff, mode, &u_small);
            let term = linalg::conjugate(&u, &current);
            next = next + term.mapv(|z| z * w);
        }
        current = next;
    }
    Ok(TruncatedState::from_trusted(current, cutoff))
}

/// Classical noise channel `E_ν`: a Gaussian-weighted mixture of phase-space
/// displacements adding `ν` photons per mode. The displacement variance per
/// quadrature is `noise_variance_per_nu·ν`, calibrated so that
/// `E_ν(vacuum) = thermal(ν)`.
pub fn apply_classical_noise(
    state: &TruncatedState,
    nu: f64,
    order: usize,
) -> Result<TruncatedState> {
    if nu <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "classical noise variance must be positive, got {nu}"
        )));
    }
    gaussian_displacement_mix(
        state,
        LEDGER.noise_variance_per_nu * nu,
        order,
        LeakPolicy::WeightedBudget(LEAK_TOL),
    )
}

/* Limit consistency **********************************************************/

/// One probe's distances along the thermal → classical-noise limit sequence.
#[derive(Debug, Clone, Serialize)]
pub struct LimitProbeReport {
    pub probe: String,
    /// Trace distance per (λ, N_E) step between the thermal-channel output
    /// and the classical-noise output at fixed ν.
    pub distances: Vec<f64>,
    pub monotone_decreasing: bool,
}

/// Full report of the `λ→1, N_E→∞, (1−λ)N_E = ν` limit check.
#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub nu: f64,
    pub lambda_seq: Vec<f64>,
    pub n_env_seq: Vec<f64>,
    pub probes: Vec<LimitProbeReport>,
}

/// Verify that thermal channels approach the classical noise channel along a
/// sequence with `(1−λ_k)·N_{E,k} = ν`.
pub fn limit_consistency_check(
    lambda_seq: &[f64],
    n_env_seq: &[f64],
    nu: f64,
    probes: &[(String, TruncatedState)],
) -> Result<LimitReport> {
    if lambda_seq.len() != n_env_seq.len() || lambda_seq.is_empty() {
        return Err(Error::InvalidParameter(
            "λ and N_E sequences must be equal-length and nonempty".into(),
        ));
    }
    for (&l, &ne) in lambda_seq.iter().zip(n_env_seq) {
        if ((1.0 - l) * ne - nu).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "(1−{l})·{ne} ≠ ν={nu}; the limit requires (1−λ)N_E = ν"
            )));
        }
    }
    let mut probe_reports = Vec::new();
    for (name, probe) in probes {
        let target = apply_classical_noise(probe, nu, DEFAULT_GH_ORDER)?;
        let mut distances = Vec::new();
        for (&l, &ne) in lambda_seq.iter().zip(n_env_seq) {
            let out = apply_thermal(probe, l, ne)?;
            distances.push(linalg::trace_distance(out.rho(), target.rho())?);
        }
        let monotone = distances.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        probe_reports.push(LimitProbeReport {
            probe: name.clone(),
            distances,
            monotone_decreasing: monotone,
        });
    }
    Ok(LimitReport {
        nu,
        lambda_seq: lambda_seq.to_vec(),
        n_env_seq: n_env_seq.to_vec(),
        probes: probe_reports,
    })
}
