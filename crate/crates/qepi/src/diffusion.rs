//! The quantum diffusion semigroup `e^{tL}` with
//! `L(ρ) = −¼Σᵢ[Rᵢ,[Rᵢ,ρ]]`, used for smoothing, the de Bruijn identity,
//! and the entropy-production diagnostics.
//!
//! Two interchangeable backends implement the semigroup:
//! - a dense superoperator eigendecomposition on the D²-dimensional
//!   vectorization (`L` is Hermitian and negative semidefinite in the
//!   Hilbert–Schmidt inner product), exact up to truncation and cached per
//!   cutoff behind the immutable engine handle;
//! - a Gauss–Hermite average of phase-space displacements, since the
//!   semigroup is exactly a Gaussian random-displacement channel with
//!   per-quadrature displacement variance `diffusion_rate·t`.
//!
//! Under the ledger convention the per-quadrature covariance grows at rate 2,
//! so the mean photon number grows as `N(t) = N(0) + t`; a vacuum input is
//! the thermal state with mean photon number `t` at time `t`. (Descriptions
//! of this semigroup under other commutator normalizations quote different
//! asymptotic photon numbers; all constants here are calibrated against the
//! recorded ledger and verified by the covariance tests.)

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::channels::{
    beam_splitter_output, gaussian_displacement_mix, LeakPolicy, DEFAULT_GH_ORDER,
};
use crate::convention::LEDGER;
use crate::error::{Error, Result};
use crate::fock::{quadrature_operator, FockCutoff, QuadratureIndex, TruncatedState};
use crate::information::von_neumann_entropy;
use crate::linalg;

/// Largest total dimension for which [`DiffusionEngine::auto`] builds the
/// dense superoperator; above this it falls back to the quadrature backend.
pub const SUPEROP_AUTO_MAX_DIM: usize = 36;

/// Default estimated tail mass allowed at the cutoff after evolution.
pub const DEFAULT_TAIL_BUDGET: f64 = 1e-3;

/// `L(ρ) = −¼Σᵢ[Rᵢ,[Rᵢ,ρ]]`; traceless and Hermitian.
pub fn liouvillean_apply(state: &TruncatedState) -> Array2<C64> {
    let cutoff = state.cutoff();
    let rho = state.rho();
    let mut out = Array2::<C64>::zeros(rho.dim());
    for index in QuadratureIndex::all(cutoff.mode_count()) {
        let r = quadrature_operator(cutoff, index);
        let r2 = r.dot(&r);
        let term = r2.dot(rho) + rho.dot(&r2) - r.dot(rho).dot(&r).mapv(|z| z * 2.0);
        out = out + term;
    }
    out.mapv(|z| z * (-0.25))
}

enum Backend {
    Superoperator {
        eigvals: Array1<f64>,
        eigvecs: Array2<C64>,
    },
    Quadrature {
        order: usize,
    },
}

/// Immutable handle to the diffusion semigroup at a fixed cutoff.
pub struct DiffusionEngine {
    cutoff: FockCutoff,
    backend: Backend,
    tail_budget: f64,
}

impl DiffusionEngine {
    /// Dense superoperator backend: one Hermitian eigendecomposition of the
    /// vectorized Liouvillean, reused for every time.
    pub fn superoperator(cutoff: &FockCutoff) -> Result<Self> {
        let d = cutoff.total_dim();
        let l_mat = liouvillean_matrix(cutoff);
        let (eigvals, eigvecs) = linalg::eigh(&l_mat)?;
        debug_assert_eq!(eigvals.len(), d * d);
        Ok(DiffusionEngine {
            cutoff: cutoff.clone(),
            backend: Backend::Superoperator { eigvals, eigvecs },
            tail_budget: DEFAULT_TAIL_BUDGET,
        })
    }

    /// Gauss–Hermite displacement-average backend.
    pub fn quadrature(cutoff: &FockCutoff, order: usize) -> Self {
        DiffusionEngine {
            cutoff: cutoff.clone(),
            backend: Backend::Quadrature { order },
            tail_budget: DEFAULT_TAIL_BUDGET,
        }
    }

    /// Superoperator backend for small spaces, quadrature above
    /// [`SUPEROP_AUTO_MAX_DIM`].
    pub fn auto(cutoff: &FockCutoff) -> Result<Self> {
        if cutoff.total_dim() <= SUPEROP_AUTO_MAX_DIM {
            Self::superoperator(cutoff)
        } else {
            Ok(Self::quadrature(cutoff, DEFAULT_GH_ORDER))
        }
    }

    pub fn with_tail_budget(mut self, budget: f64) -> Self {
        self.tail_budget = budget;
        self
    }

    pub fn cutoff(&self) -> &FockCutoff {
        &self.cutoff
    }

    pub fn backend_name(&self) -> &'static str {
        match self.backend {
            Backend::Superoperator { .. } => "superoperator",
            Backend::Quadrature { .. } => "quadrature",
        }
    }

    /// Largest time for which the post-evolution thermal-tail estimate stays
    /// within the budget, given the state's current mean photon number.
    pub fn max_safe_time(&self, state: &TruncatedState) -> f64 {
        let d = *self.cutoff.dims().iter().min().unwrap() as f64;
        let n0 = state.mean_photon_number();
        // Solve q^d = budget for q, then (N0 + t)/(N0 + t + 1) = q.
        let q = self.tail_budget.powf(1.0 / d);
        let n_max = q / (1.0 - q);
        (n_max - n0).max(0.0)
    }

    /// `e^{tL}(ρ)`.
    pub fn evolve(&self, state: &TruncatedState, t: f64) -> Result<TruncatedState> {
        if state.cutoff() != &self.cutoff {
            return Err(Error::CutoffMismatch {
                left: state.cutoff().dims().to_vec(),
                right: self.cutoff.dims().to_vec(),
            });
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "diffusion time must be nonnegative, got {t}"
            )));
        }
        if t == 0.0 {
            return Ok(state.clone());
        }
        let n_out = state.mean_photon_number() + t;
        let q = n_out / (n_out + 1.0);
        let d_min = *self.cutoff.dims().iter().min().unwrap();
        if q.powi(d_min as i32) > self.tail_budget {
            return Err(Error::DiffusionBudget {
                t,
                cutoff: d_min,
                suggested: (self.tail_budget.ln() / q.ln()).ceil() as usize,
            });
        }
        match &self.backend {
            Backend::Superoperator { eigvals, eigvecs } => {
                let d = self.cutoff.total_dim();
                let vec_rho = Array1::from_iter(state.rho().iter().cloned());
                let mut coeffs = linalg::dagger(eigvecs).dot(&vec_rho);
                for (c, &lam) in coeffs.iter_mut().zip(eigvals.iter()) {
                    // Clamp tiny positive eigensolver leakage; L ⪯ 0.
                    *c *= (t * lam.min(0.0)).exp();
                }
                let out_vec = eigvecs.dot(&coeffs);
                let rho = Array2::from_shape_vec((d, d), out_vec.to_vec())
                    .map_err(|e| Error::InvalidParameter(e.to_string()))?;
                Ok(TruncatedState::from_trusted(rho, self.cutoff.clone()))
            }
            Backend::Quadrature { order } => gaussian_displacement_mix(
                state,
                LEDGER.diffusion_rate * t,
                *order,
                LeakPolicy::Unchecked,
            ),
        }
    }

    /// Short diffusion producing a full-rank state: `evolve(state, epsilon)`.
    pub fn smooth(&self, state: &TruncatedState, epsilon: f64) -> Result<TruncatedState> {
        if epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "smoothing time must be positive, got {epsilon}"
            )));
        }
        let out = self.evolve(state, epsilon)?;
        let min_eig = out.min_eigenvalue()?;
        if min_eig <= 0.0 {
            return Err(Error::NotFullRank { min_eig });
        }
        Ok(out)
    }
}

/// Dense matrix of the vectorized Liouvillean (row-major vectorization,
/// `vec(AXB) = (A⊗Bᵀ)vec(X)`).
fn liouvillean_matrix(cutoff: &FockCutoff) -> Array2<C64> {
    let d = cutoff.total_dim();
    let eye = linalg::eye(d);
    let mut l_mat = Array2::<C64>::zeros((d * d, d * d));
    for index in QuadratureIndex::all(cutoff.mode_count()) {
        let r = quadrature_operator(cutoff, index);
        let r2 = r.dot(&r);
        let r_t = r.t().to_owned();
        let r2_t = r2.t().to_owned();
        l_mat = l_mat + linalg::kron(&r2, &eye);
        l_mat = l_mat + linalg::kron(&eye, &r2_t);
        l_mat = l_mat - linalg::kron(&r, &r_t).mapv(|z| z * 2.0);
    }
    l_mat.mapv(|z| z * (-0.25))
}

/// Diagnostic kind carried by a [`DiffusionTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    Plain,
    SCurve,
    HCurve,
}

/// Sampled diffusion diagnostics over a time grid.
#[derive(Debug, Clone, Serialize)]
pub struct DiffusionTrace {
    pub times: Vec<f64>,
    /// `S(ρ_t)` in nats (for s/h curves, the entropy of the evolved Z arm).
    pub entropies: Vec<f64>,
    /// Total Fisher information per time; empty when not requested.
    pub fisher_totals: Vec<f64>,
    pub diagnostic: TraceKind,
    /// `s(t)` or `h(t)` values; empty for plain traces.
    pub diagnostic_values: Vec<f64>,
}

impl DiffusionTrace {
    fn validate(&self) -> Result<()> {
        if !self.times.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidParameter(
                "trace times must be strictly increasing".into(),
            ));
        }
        if self.entropies.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter(
                "trace entropies must be finite".into(),
            ));
        }
        Ok(())
    }
}

fn check_pair(engine: &DiffusionEngine, x: &TruncatedState, y: &TruncatedState) -> Result<()> {
    if x.cutoff() != y.cutoff() || x.cutoff() != engine.cutoff() {
        return Err(Error::CutoffMismatch {
            left: x.cutoff().dims().to_vec(),
            right: y.cutoff().dims().to_vec(),
        });
    }
    Ok(())
}

/// `s(t) = S(e^{tL}Z) − λS(e^{tL}X) − (1−λ)S(e^{tL}Y)` with `Z = X⊞_λY`,
/// sampled over `times`.
pub fn s_curve(
    engine: &DiffusionEngine,
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
    times: &[f64],
) -> Result<DiffusionTrace> {
    check_pair(engine, x, y)?;
    let z = beam_splitter_output(x, y, lambda)?;
    let mut entropies = Vec::with_capacity(times.len());
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let sz = von_neumann_entropy(&engine.evolve(&z, t)?)?;
        let sx = von_neumann_entropy(&engine.evolve(x, t)?)?;
        let sy = von_neumann_entropy(&engine.evolve(y, t)?)?;
        entropies.push(sz);
        values.push(sz - lambda * sx - (1.0 - lambda) * sy);
    }
    let trace = DiffusionTrace {
        times: times.to_vec(),
        entropies,
        fisher_totals: Vec::new(),
        diagnostic: TraceKind::SCurve,
        diagnostic_values: values,
    };
    trace.validate()?;
    Ok(trace)
}

/// Defect of the commutation identity
/// `e^{tL}(B_λ(x⊗y)) = B_λ(e^{tL}x ⊗ e^{tL}y)`, as a trace distance between
/// the two evaluation orders of the Z arm.
pub fn commutation_defect(
    engine: &DiffusionEngine,
    x: &TruncatedState,
    y: &TruncatedState,
    lambda: f64,
    t: f64,
) -> Result<f64> {
    check_pair(engine, x, y)?;
    let z = beam_splitter_output(x, y, lambda)?;
    let evolved_then_mixed = beam_splitter_output(&engine.evolve(x, t)?, &engine.evolve(y, t)?, lambda)?;
    let mixed_then_evolved = engine.evolve(&z, t)?;
    linalg::trace_distance(evolved_then_mixed.rho(), mixed_then_evolved.rho())
}

/// `h(t)` ratio for the exponential-form inequality at λ = ½, with the simple
/// schedule `F = G = t` (so the Z arm also evolves for time `t`):
/// `h(t) = [½e^{S(X_t)/n} + ½e^{S(Y_t)/n}] / e^{S(Z_t)/n}`.
pub fn h_curve(
    engine: &DiffusionEngine,
    x: &TruncatedState,
    y: &TruncatedState,
    times: &[f64],
) -> Result<DiffusionTrace> {
    check_pair(engine, x, y)?;
    let n = x.mode_count() as f64;
    let z = beam_splitter_output(x, y, 0.5)?;
    let mut entropies = Vec::with_capacity(times.len());
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let sz = von_neumann_entropy(&engine.evolve(&z, t)?)?;
        let sx = von_neumann_entropy(&engine.evolve(x, t)?)?;
        let sy = von_neumann_entropy(&engine.evolve(y, t)?)?;
        entropies.push(sz);
        values.push((0.5 * (sx / n).exp() + 0.5 * (sy / n).exp()) / (sz / n).exp());
    }
    let trace = DiffusionTrace {
        times: times.to_vec(),
        entropies,
        fisher_totals: Vec::new(),
        diagnostic: TraceKind::HCurve,
        diagnostic_values: values,
    };
    trace.validate()?;
    Ok(trace)
}

/// Entropy (and optionally Fisher) trace of a single evolving state.
pub fn plain_trace(
    engine: &DiffusionEngine,
    state: &TruncatedState,
    times: &[f64],
    fisher_step: Option<f64>,
) -> Result<DiffusionTrace> {
    let mut entropies = Vec::with_capacity(times.len());
    let mut fishers = Vec::new();
    for &t in times {
        let evolved = engine.evolve(state, t)?;
        entropies.push(von_neumann_entropy(&evolved)?);
        if let Some(step) = fisher_step {
            fishers.push(crate::information::fisher_total(&evolved, step)?.total);
        }
    }
    let trace = DiffusionTrace {
        times: times.to_vec(),
        entropies,
        fisher_totals: fishers,
        diagnostic: TraceKind::Plain,
        diagnostic_values: Vec::new(),
    };
    trace.validate()?;
    Ok(trace)
}

/// Log-spaced grid on `[0, t_max]` (t = 0 included as the first sample).
pub fn log_spaced_times(t_max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && t_max > 0.0);
    let lo = (t_max / 100.0).ln();
    let hi = t_max.ln();
    let mut out = vec![0.0];
    for i in 0..count - 1 {
        let f = i as f64 / (count - 2).max(1) as f64;
        out.push((lo + f * (hi - lo)).exp());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock, make_thermal, maximally_mixed, random_state_supported};
    use crate::gaussian;
    use approx::assert_abs_diff_eq;

    #[test]
    fn liouvillean_is_traceless_and_hermitian() {
        let state = random_state_supported(&FockCutoff::single(10).unwrap(), 6, 4, 3).unwrap();
        let l = liouvillean_apply(&state);
        assert!(linalg::trace(&l).norm() < 1e-12);
        assert!(linalg::herm_defect(&l) < 1e-12);
    }

    #[test]
    fn liouvillean_preserves_thermal_diagonality() {
        let t = make_thermal(0.8, 24).unwrap();
        let l = liouvillean_apply(&t);
        let mut off_diag = 0.0f64;
        for ((i, j), z) in l.indexed_iter() {
            if i != j {
                off_diag = off_diag.max(z.norm());
            }
        }
        assert!(off_diag < 1e-13, "off-diagonal Liouvillean action: {off_diag}");
    }

    #[test]
    fn liouvillean_of_maximally_mixed_acts_only_at_the_edge() {
        let cutoff = FockCutoff::single(12).unwrap();
        let mixed = maximally_mixed(&cutoff);
        let l = liouvillean_apply(&mixed);
        // Entries away from the top two levels vanish: double commutators
        // annihilate the identity except where truncation breaks the ladder.
        for ((i, j), z) in l.indexed_iter() {
            if i < 10 && j < 10 {
                assert!(z.norm() < 1e-13, "bulk entry ({i},{j}) = {z}");
            }
        }
        let edge: f64 = l.indexed_iter().map(|(_, z)| z.norm()).sum();
        assert!(edge > 1e-3);
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let cutoff = FockCutoff::single(12).unwrap();
        let engine = DiffusionEngine::auto(&cutoff).unwrap();
        let state = make_fock(1, 12).unwrap();
        let out = engine.evolve(&state, 0.0).unwrap();
        assert!(linalg::fro_norm(&(out.rho() - state.rho())) == 0.0);
    }

    #[test]
    fn covariance_grows_at_the_ledger_rate() {
        // Gaussian and non-Gaussian inputs alike.
        let cutoff = FockCutoff::single(30).unwrap();
        let engine = DiffusionEngine::quadrature(&cutoff, DEFAULT_GH_ORDER);
        for state in [make_fock(0, 30).unwrap(), make_fock(1, 30).unwrap()] {
            let (_, gamma0) = state.moments();
            for t in [0.2, 0.5] {
                let evolved = engine.evolve(&state, t).unwrap();
                let (mean, gamma) = evolved.moments();
                assert!(mean.iter().all(|m| m.abs() < 1e-8));
                for i in 0..2 {
                    assert_abs_diff_eq!(
                        gamma[(i, i)],
                        gamma0[(i, i)] + LEDGER.diffusion_rate * t,
                        epsilon = 1e-6
                    );
                }
                // Cross-check against the covariance oracle.
                let oracle = gaussian::oracle_diffusion(
                    &gaussian::CovarianceState::from_state(&state),
                    t,
                );
                assert_abs_diff_eq!(gamma[(0, 0)], oracle.gamma()[(0, 0)], epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn superoperator_and_quadrature_backends_agree() {
        let cutoff = FockCutoff::single(14).unwrap();
        let state = random_state_supported(&cutoff, 6, 3, 11).unwrap();
        let superop = DiffusionEngine::superoperator(&cutoff).unwrap();
        let quad = DiffusionEngine::quadrature(&cutoff, DEFAULT_GH_ORDER);
        for t in [0.05, 0.15] {
            let a = superop.evolve(&state, t).unwrap();
            let b = quad.evolve(&state, t).unwrap();
            let dist = linalg::trace_distance(a.rho(), b.rho()).unwrap();
            assert!(dist < 1e-6, "backend disagreement {dist} at t={t}");
        }
    }

    #[test]
    fn semigroup_property_holds() {
        let cutoff = FockCutoff::single(16).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff).unwrap();
        let state = random_state_supported(&cutoff, 6, 4, 5).unwrap();
        let step_then_step = engine
            .evolve(&engine.evolve(&state, 0.3).unwrap(), 0.2)
            .unwrap();
        let direct = engine.evolve(&state, 0.5).unwrap();
        let dist = linalg::trace_distance(step_then_step.rho(), direct.rho()).unwrap();
        assert!(dist < 1e-8, "semigroup defect {dist}");
    }

    #[test]
    fn entropy_is_monotone_and_states_merge_at_late_times() {
        let cutoff = FockCutoff::single(26).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(1e-2);
        let one = make_fock(1, 26).unwrap();
        let two = make_fock(2, 26).unwrap();
        let mut prev = von_neumann_entropy(&one).unwrap();
        for t in [0.1, 0.3, 1.0, 2.0] {
            let s = von_neumann_entropy(&engine.evolve(&one, t).unwrap()).unwrap();
            assert!(s > prev - 1e-10, "entropy decreased at t={t}");
            prev = s;
        }
        // Fock |1⟩ and |2⟩ approach the same state under diffusion.
        let d_early = linalg::trace_distance(
            engine.evolve(&one, 0.5).unwrap().rho(),
            engine.evolve(&two, 0.5).unwrap().rho(),
        )
        .unwrap();
        let d_late = linalg::trace_distance(
            engine.evolve(&one, 3.0).unwrap().rho(),
            engine.evolve(&two, 3.0).unwrap().rho(),
        )
        .unwrap();
        assert!(d_late < d_early);
    }

    #[test]
    fn evolve_refuses_times_beyond_the_tail_budget() {
        let cutoff = FockCutoff::single(10).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(1e-6);
        let state = make_fock(0, 10).unwrap();
        let t_max = engine.max_safe_time(&state);
        assert!(engine.evolve(&state, t_max + 1.0).is_err());
        assert!(engine.evolve(&state, (t_max - 0.01).max(0.0)).is_ok());
    }

    #[test]
    fn smoothing_gives_full_rank_and_raises_entropy() {
        let cutoff = FockCutoff::single(18).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff).unwrap();
        let pure = make_fock(1, 18).unwrap();
        let smoothed = engine.smooth(&pure, 1e-3).unwrap();
        assert!(smoothed.min_eigenvalue().unwrap() > 0.0);
        assert!(
            von_neumann_entropy(&smoothed).unwrap() >= von_neumann_entropy(&pure).unwrap()
        );

        // Thermal states stay diagonal under smoothing.
        let t = make_thermal(0.5, 18).unwrap();
        let st = engine.smooth(&t, 0.05).unwrap();
        let mut off = 0.0f64;
        for ((i, j), z) in st.rho().indexed_iter() {
            if i != j {
                off = off.max(z.norm());
            }
        }
        assert!(off < 1e-12);
    }

    #[test]
    fn s_curve_is_nonnegative_and_nonincreasing_for_fock_inputs() {
        let cutoff = FockCutoff::single(28).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(2e-2);
        let one = make_fock(1, 28).unwrap();
        let two = make_fock(2, 28).unwrap();
        let times = log_spaced_times(3.0, 8);
        let trace = s_curve(&engine, &one, &two, 0.5, &times).unwrap();
        assert!(trace.diagnostic_values[0] >= 0.0);
        for w in trace.diagnostic_values.windows(2) {
            assert!(w[1] <= w[0] + 1e-8, "s(t) increased: {:?}", trace.diagnostic_values);
        }
    }

    #[test]
    fn s_curve_vanishes_for_identical_thermal_inputs() {
        let cutoff = FockCutoff::single(24).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(1e-2);
        let t = make_thermal(0.6, 24).unwrap();
        let trace = s_curve(&engine, &t, &t, 0.37, &[0.0, 0.5, 1.5]).unwrap();
        for v in &trace.diagnostic_values {
            assert!(v.abs() < 1e-8, "s(t) = {v} for identical thermal inputs");
        }
    }

    #[test]
    fn evolution_commutes_with_the_beam_splitter() {
        let cutoff = FockCutoff::single(24).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff).unwrap();
        let x = make_fock(1, 24).unwrap();
        let y = make_fock(0, 24).unwrap();
        let defect = commutation_defect(&engine, &x, &y, 0.5, 0.4).unwrap();
        assert!(defect < 1e-7, "commutation defect {defect}");
    }

    #[test]
    fn h_curve_is_flat_for_identical_thermal_inputs() {
        let cutoff = FockCutoff::single(24).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(1e-2);
        let t = make_thermal(0.8, 24).unwrap();
        let trace = h_curve(&engine, &t, &t, &[0.0, 0.4, 1.2]).unwrap();
        for v in &trace.diagnostic_values {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn h_curve_starts_at_most_one_and_approaches_one() {
        let cutoff = FockCutoff::single(30).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(5e-2);
        let x = make_fock(1, 30).unwrap();
        let y = make_fock(2, 30).unwrap();
        let times = [0.0, 0.5, 1.5, 3.0, 4.5];
        let trace = h_curve(&engine, &x, &y, &times).unwrap();
        assert!(trace.diagnostic_values[0] <= 1.0 + 1e-6);
        let last = trace.diagnostic_values.last().unwrap();
        assert!((last - 1.0).abs() < 0.05, "h(t_max) = {last}");
    }

    #[test]
    fn relative_entropy_to_matched_gaussian_decreases() {
        let cutoff = FockCutoff::single(30).unwrap();
        let engine = DiffusionEngine::superoperator(&cutoff)
            .unwrap()
            .with_tail_budget(5e-2);
        let state = make_fock(1, 30).unwrap();
        let mut prev = f64::INFINITY;
        for t in [0.2, 0.8, 2.0] {
            let evolved = engine.evolve(&state, t).unwrap();
            // Fock inputs keep an isotropic covariance; the matched Gaussian
            // is the thermal state with the same mean photon number.
            let matched = make_thermal(evolved.mean_photon_number(), 30).unwrap();
            let rel = crate::information::relative_entropy(&evolved, &matched)
                .unwrap()
                .finite()
                .unwrap();
            assert!(rel < prev, "relative entropy to Gaussian rose at t={t}");
            prev = rel;
        }
    }
}
