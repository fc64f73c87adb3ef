//! Truncated Fock-space representation of n-mode bosonic states and the
//! operator algebra every other module consumes.
//!
//! Quadratures follow the ledger convention `Q = a + a†`, `P = i(a† − a)`,
//! `[Q, P] = 2i`. Truncation corrupts the commutator only on the top Fock
//! level; every constructor enforces a tail budget instead of silently
//! renormalizing large leakage.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::convention::{ConventionLedger, LEDGER};
use crate::error::{Error, Result};
use crate::linalg;

/// Hermiticity tolerance for state validation.
pub const TOL_HERM: f64 = 1e-10;
/// Trace tolerance for state validation.
pub const TOL_TRACE: f64 = 1e-10;
/// Allowed negativity of the minimum eigenvalue.
pub const TOL_PSD: f64 = 1e-10;
/// Probability mass allowed beyond the cutoff in constructors.
pub const TAIL_TOL: f64 = 1e-8;
/// Default budget for displacement leakage defects.
pub const LEAK_TOL: f64 = 1e-8;

/// Per-mode Fock truncation (levels `0..d−1` retained per mode).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockCutoff {
    dims: Vec<usize>,
}

impl FockCutoff {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidParameter("cutoff needs at least one mode".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidParameter(format!(
                "every mode dimension must be at least 2, got {d}"
            )));
        }
        Ok(FockCutoff { dims })
    }

    pub fn single(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn uniform(modes: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; modes])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mode_count(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major stride of `mode` in the composite index.
    fn stride(&self, mode: usize) -> usize {
        self.dims[mode + 1..].iter().product()
    }

    /// Cutoff for the concatenation of two subsystems.
    pub fn join(&self, other: &FockCutoff) -> FockCutoff {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        FockCutoff { dims }
    }
}

/// Which quadrature of a mode, in the ordering `R = (Q₁, P₁, …, Qₙ, Pₙ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureKind {
    Q,
    P,
}

/// Index into the quadrature tuple `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureIndex {
    pub mode: usize,
    pub kind: QuadratureKind,
}

impl QuadratureIndex {
    pub fn q(mode: usize) -> Self {
        QuadratureIndex { mode, kind: QuadratureKind::Q }
    }

    pub fn p(mode: usize) -> Self {
        QuadratureIndex { mode, kind: QuadratureKind::P }
    }

    /// Position in the flat `R` ordering.
    pub fn flat(&self) -> usize {
        2 * self.mode + matches!(self.kind, QuadratureKind::P) as usize
    }

    /// All `2n` quadrature indices of an `n`-mode system.
    pub fn all(modes: usize) -> Vec<QuadratureIndex> {
        (0..modes)
            .flat_map(|m| [QuadratureIndex::q(m), QuadratureIndex::p(m)])
            .collect()
    }
}

/// An n-mode density matrix on a per-mode Fock cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    rho: Array2<C64>,
    cutoff: FockCutoff,
}

impl TruncatedState {
    /// Wrap and validate a density matrix.
    pub fn from_density(rho: Array2<C64>, cutoff: FockCutoff) -> Result<Self> {
        let d = cutoff.total_dim();
        if rho.dim() != (d, d) {
            return Err(Error::InvalidParameter(format!(
                "matrix shape {:?} does not match total dimension {d}",
                rho.dim()
            )));
        }
        let state = TruncatedState { rho, cutoff };
        state.validate()?;
        Ok(state)
    }

    /// Internal constructor for outputs that are valid by construction;
    /// hermitizes to scrub roundoff but performs no eigen-checks.
    pub(crate) fn from_trusted(rho: Array2<C64>, cutoff: FockCutoff) -> Self {
        TruncatedState { rho: linalg::hermitize(&rho), cutoff }
    }

    pub fn rho(&self) -> &Array2<C64> {
        &self.rho
    }

    pub fn cutoff(&self) -> &FockCutoff {
        &self.cutoff
    }

    pub fn mode_count(&self) -> usize {
        self.cutoff.mode_count()
    }

    pub fn total_dim(&self) -> usize {
        self.cutoff.total_dim()
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.rho).re
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let vals = linalg::eigvalsh(&self.rho)?;
        Ok(vals.iter().cloned().fold(f64::INFINITY, f64::min))
    }

    /// Hermiticity, unit trace, and positivity within the module tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = linalg::herm_defect(&self.rho);
        if herm > TOL_HERM {
            return Err(Error::InvalidParameter(format!(
                "density matrix is not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TOL_TRACE {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        let min_eig = self.min_eigenvalue()?;
        if min_eig < -TOL_PSD {
            return Err(Error::InvalidParameter(format!(
                "density matrix has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(())
    }

    /// `Re tr[ρ·op]`.
    pub fn expect_re(&self, op: &Array2<C64>) -> f64 {
        linalg::trace_prod_re(op, &self.rho)
    }

    /// Total mean photon number across all modes.
    pub fn mean_photon_number(&self) -> f64 {
        let dims = self.cutoff.dims();
        let n_modes = dims.len();
        let mut total = 0.0;
        for (i, z) in self.rho.diag().iter().enumerate() {
            let mut idx = i;
            let mut photons = 0usize;
            for m in (0..n_modes).rev() {
                photons += idx % dims[m];
                idx /= dims[m];
            }
            total += photons as f64 * z.re;
        }
        total
    }

    /// `tr[H ρ]` with `H = Σ_m (2N_m + 1)`, the ledger form of `½ΣᵢRᵢ²`.
    pub fn mean_energy(&self) -> f64 {
        2.0 * self.mean_photon_number() + self.mode_count() as f64
    }

    /// Probability of any mode sitting at its top retained level.
    pub fn top_level_mass(&self) -> f64 {
        let dims = self.cutoff.dims();
        let n_modes = dims.len();
        let mut mass = 0.0;
        for (i, z) in self.rho.diag().iter().enumerate() {
            let mut idx = i;
            let mut at_top = false;
            for m in (0..n_modes).rev() {
                if idx % dims[m] == dims[m] - 1 {
                    at_top = true;
                }
                idx /= dims[m];
            }
            if at_top {
                mass += z.re;
            }
        }
        mass
    }

    /// First moments `⟨Rᵢ⟩` and the symmetrized covariance matrix
    /// `γᵢⱼ = ½⟨{ΔRᵢ, ΔRⱼ}⟩` (vacuum gives `γ = I`).
    pub fn moments(&self) -> (Array1<f64>, Array2<f64>) {
        let n = self.mode_count();
        let indices = QuadratureIndex::all(n);
        let ops: Vec<Array2<C64>> = indices
            .iter()
            .map(|&i| quadrature_operator(&self.cutoff, i))
            .collect();
        let mut mean = Array1::<f64>::zeros(2 * n);
        for (k, op) in ops.iter().enumerate() {
            mean[k] = self.expect_re(op);
        }
        let mut gamma = Array2::<f64>::zeros((2 * n, 2 * n));
        for i in 0..2 * n {
            let ri_rho = ops[i].dot(&self.rho);
            for j in i..2 * n {
                // Re tr[ρ RᵢRⱼ] = Re tr[Rⱼ·(Rᵢρ)] by cyclicity.
                let second = linalg::trace_prod_re(&ops[j], &ri_rho);
                let c = second - mean[i] * mean[j];
                gamma[(i, j)] = c;
                gamma[(j, i)] = c;
            }
        }
        (mean, gamma)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StateRecord::from(self)).expect("state serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let record: StateRecord = serde_json::from_value(v.clone())?;
        record.into_state()
    }
}

/// Serialized layout: row-major matrix with interleaved re/im parts and the
/// convention ledger embedded.
#[derive(Debug, Serialize, Deserialize)]
struct StateRecord {
    convention: ConventionLedger,
    mode_dims: Vec<usize>,
    /// Row-major, `[re₀₀, im₀₀, re₀₁, im₀₁, …]`.
    matrix: Vec<f64>,
}

impl From<&TruncatedState> for StateRecord {
    fn from(s: &TruncatedState) -> Self {
        let mut matrix = Vec::with_capacity(2 * s.rho.len());
        for row in s.rho.rows() {
            for z in row {
                matrix.push(z.re);
                matrix.push(z.im);
            }
        }
        StateRecord {
            convention: LEDGER,
            mode_dims: s.cutoff.dims().to_vec(),
            matrix,
        }
    }
}

impl StateRecord {
    fn into_state(self) -> Result<TruncatedState> {
        let cutoff = FockCutoff::new(self.mode_dims)?;
        let d = cutoff.total_dim();
        if self.matrix.len() != 2 * d * d {
            return Err(Error::InvalidParameter(format!(
                "matrix payload length {} does not match dimension {d}",
                self.matrix.len()
            )));
        }
        let data: Vec<C64> = self
            .matrix
            .chunks_exact(2)
            .map(|c| C64::new(c[0], c[1]))
            .collect();
        let rho = Array2::from_shape_vec((d, d), data)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        TruncatedState::from_density(rho, cutoff)
    }
}

/* Operators ******************************************************************/

/// Single-mode annihilation operator, `⟨n−1|a|n⟩ = √n`.
pub fn annihilation(d: usize) -> Array2<C64> {
    let mut a = Array2::<C64>::zeros((d, d));
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Single-mode number operator.
pub fn number_operator(d: usize) -> Array2<C64> {
    Array2::from_diag(&Array1::from_iter((0..d).map(|n| C64::new(n as f64, 0.0))))
}

/// Single-mode quadrature: `Q = a + a†` or `P = i(a† − a)`.
pub fn quadrature_single(d: usize, kind: QuadratureKind) -> Array2<C64> {
    let a = annihilation(d);
    let adag = linalg::dagger(&a);
    match kind {
        QuadratureKind::Q => &a + &adag,
        QuadratureKind::P => (&adag - &a).mapv(|z| z * C64::new(0.0, 1.0)),
    }
}

/// Embed a single-mode operator into the full tensor space at `mode`.
pub fn embed_single(cutoff: &FockCutoff, mode: usize, op: &Array2<C64>) -> Array2<C64> {
    let dims = cutoff.dims();
    assert!(mode < dims.len(), "mode index out of range");
    assert_eq!(op.dim().0, dims[mode], "operator dimension mismatch");
    let left: usize = dims[..mode].iter().product();
    let right: usize = dims[mode + 1..].iter().product();
    let mut out = linalg::kron(&linalg::eye(left), op);
    if right > 1 {
        out = linalg::kron(&out, &linalg::eye(right));
    }
    out
}

/// The quadrature operator `Rᵢ` on the full space.
pub fn quadrature_operator(cutoff: &FockCutoff, index: QuadratureIndex) -> Array2<C64> {
    let d = cutoff.dims()[index.mode];
    embed_single(cutoff, index.mode, &quadrature_single(d, index.kind))
}

/// Parity operator `Π = (−1)^{ΣNₘ}`.
pub fn parity_operator(cutoff: &FockCutoff) -> Array2<C64> {
    let dims = cutoff.dims();
    let d = cutoff.total_dim();
    let mut diag = Array1::<C64>::zeros(d);
    for i in 0..d {
        let mut idx = i;
        let mut photons = 0usize;
        for m in (0..dims.len()).rev() {
            photons += idx % dims[m];
            idx /= dims[m];
        }
        diag[i] = C64::new(if photons % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Array2::from_diag(&diag)
}

/// Norm defect measuring how strongly a unitary on the truncated space moves
/// mass from the bottom ¾ of the Fock ladder onto the top level.
pub fn leakage_defect(u: &Array2<C64>, d: usize) -> f64 {
    let low = (3 * d) / 4;
    (0..low).map(|j| u[(d - 1, j)].norm_sqr()).sum::<f64>().sqrt()
}

fn suggested_cutoff_for_shift(d: usize, dq: f64, dp: f64) -> usize {
    // A displacement by (dq, dp) adds about (|d|/2)² photons with Poisson
    // spread; pad by a few standard deviations.
    let amp2 = 0.25 * (dq * dq + dp * dp);
    d + (amp2 + 4.0 * amp2.sqrt() + 8.0).ceil() as usize
}

/// Displacement unitary shifting `⟨Rᵢ⟩` by `theta`: the exponential of the
/// conjugate quadrature generator (`D_Q(θ) = e^{−iθP/2}`, `D_P(θ) = e^{iθQ/2}`).
pub fn displacement_along(
    cutoff: &FockCutoff,
    index: QuadratureIndex,
    theta: f64,
) -> Result<Array2<C64>> {
    displacement_along_with_budget(cutoff, index, theta, LEAK_TOL)
}

/// As [`displacement_along`], with an explicit leakage budget.
pub fn displacement_along_with_budget(
    cutoff: &FockCutoff,
    index: QuadratureIndex,
    theta: f64,
    budget: f64,
) -> Result<Array2<C64>> {
    let (dq, dp) = match index.kind {
        QuadratureKind::Q => (theta, 0.0),
        QuadratureKind::P => (0.0, theta),
    };
    displacement_phase_space_with_budget(cutoff, index.mode, dq, dp, budget)
}

/// Phase-space displacement of one mode by `(dq, dp)`:
/// `D = exp(−i(dq·P − dp·Q)/2)`.
pub fn displacement_phase_space(
    cutoff: &FockCutoff,
    mode: usize,
    dq: f64,
    dp: f64,
) -> Result<Array2<C64>> {
    displacement_phase_space_with_budget(cutoff, mode, dq, dp, LEAK_TOL)
}

/// As [`displacement_phase_space`], with an explicit leakage budget.
pub fn displacement_phase_space_with_budget(
    cutoff: &FockCutoff,
    mode: usize,
    dq: f64,
    dp: f64,
    budget: f64,
) -> Result<Array2<C64>> {
    let d = cutoff.dims()[mode];
    let q = quadrature_single(d, QuadratureKind::Q);
    let p = quadrature_single(d, QuadratureKind::P);
    let generator = (&p.mapv(|z| z * dq) - &q.mapv(|z| z * dp)).mapv(|z| z * 0.5);
    let u = linalg::expi_hermitian(&generator, -1.0)?;
    let defect = leakage_defect(&u, d);
    if defect > budget {
        return Err(Error::DisplacementLeakage {
            defect,
            budget,
            suggested: suggested_cutoff_for_shift(d, dq, dp),
        });
    }
    Ok(embed_single(cutoff, mode, &u))
}

/* Constructors ***************************************************************/

/// Pure Fock state `|k⟩⟨k|` on a single mode.
pub fn make_fock(k: usize, d: usize) -> Result<TruncatedState> {
    let cutoff = FockCutoff::single(d)?;
    if k >= d {
        return Err(Error::CutoffTooSmall { photons: k, cutoff: d });
    }
    let mut rho = Array2::<C64>::zeros((d, d));
    rho[(k, k)] = C64::new(1.0, 0.0);
    Ok(TruncatedState { rho, cutoff })
}

/// Smallest cutoff keeping the truncated thermal entropy within `tol` of
/// `g(N)` (the geometric tail and its log weight both enter).
pub fn thermal_cutoff_for(n: f64, tol: f64) -> usize {
    if n <= 0.0 {
        return 2;
    }
    let q = n / (n + 1.0);
    let mut d = 2usize;
    loop {
        let tail = q.powi(d as i32);
        let entropy_weight = (d as f64 + 1.0) * (1.0 / q).ln() + (n + 1.0).ln() + 1.0;
        if tail * entropy_weight < tol || d > 4096 {
            return d;
        }
        d += 1;
    }
}

/// Thermal state with mean photon number `n` on a single mode: the geometric
/// distribution `p_k ∝ (N/(N+1))^k`, renormalized on the truncated space.
pub fn make_thermal(n: f64, d: usize) -> Result<TruncatedState> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "mean photon number must be nonnegative, got {n}"
        )));
    }
    let cutoff = FockCutoff::single(d)?;
    if n == 0.0 {
        return make_fock(0, d);
    }
    let q = n / (n + 1.0);
    let tail = q.powi(d as i32);
    if tail >= TAIL_TOL {
        return Err(Error::TailMass {
            tail,
            cutoff: d,
            budget: TAIL_TOL,
            required: (TAIL_TOL.ln() / q.ln()).ceil() as usize,
        });
    }
    let mut weights = Array1::<f64>::zeros(d);
    let mut w = 1.0 / (n + 1.0);
    for k in 0..d {
        weights[k] = w;
        w *= q;
    }
    let norm: f64 = weights.sum();
    let rho = Array2::from_diag(&Array1::from_iter(
        weights.iter().map(|&p| C64::new(p / norm, 0.0)),
    ));
    Ok(TruncatedState { rho, cutoff })
}

/// Coherent state `|α⟩⟨α|` on a single mode.
pub fn make_coherent(alpha: C64, d: usize) -> Result<TruncatedState> {
    let cutoff = FockCutoff::single(d)?;
    let mut amps = Array1::<C64>::zeros(d);
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    let mut captured = 0.0;
    for k in 0..d {
        amps[k] = c;
        captured += c.norm_sqr();
        c *= alpha / C64::new(((k + 1) as f64).sqrt(), 0.0);
    }
    let tail = 1.0 - captured;
    if tail >= TAIL_TOL {
        // Walk the Poisson tail out to find a sufficient cutoff.
        let mean = alpha.norm_sqr();
        let mut required = d;
        let mut mass = captured;
        let mut ck = amps[d - 1].norm_sqr();
        while mass < 1.0 - TAIL_TOL * 0.1 && required < 8192 {
            ck *= mean / required as f64;
            mass += ck;
            required += 1;
        }
        return Err(Error::TailMass { tail, cutoff: d, budget: TAIL_TOL, required });
    }
    let scale = C64::new(1.0 / captured.sqrt(), 0.0);
    let amps = amps.mapv(|z| z * scale);
    let mut rho = Array2::<C64>::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            rho[(i, j)] = amps[i] * amps[j].conj();
        }
    }
    Ok(TruncatedState { rho, cutoff })
}

/// Seeded random state of the given rank: a normalized Wishart-type product
/// `GG†/tr` with `G` a `D×rank` complex standard-normal matrix.
pub fn random_state(cutoff: &FockCutoff, rank: usize, seed: u64) -> Result<TruncatedState> {
    random_state_supported(cutoff, cutoff.total_dim(), rank, seed)
}

/// Random state whose support is restricted to the lowest `support` levels of
/// the composite space. Keeping support in the bottom half of the ladder makes
/// beam-splitter outputs exactly leakage-free by photon-number conservation.
pub fn random_state_supported(
    cutoff: &FockCutoff,
    support: usize,
    rank: usize,
    seed: u64,
) -> Result<TruncatedState> {
    let d = cutoff.total_dim();
    if support < 1 || support > d {
        return Err(Error::InvalidParameter(format!(
            "support {support} outside 1..={d}"
        )));
    }
    if rank < 1 || rank > support {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} outside 1..={support}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factor = Array2::<C64>::zeros((d, rank));
    for i in 0..support {
        for j in 0..rank {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            factor[(i, j)] = C64::new(re, im);
        }
    }
    let mut rho = factor.dot(&linalg::dagger(&factor));
    let tr = linalg::trace(&rho).re;
    rho.mapv_inplace(|z| z / tr);
    Ok(TruncatedState::from_trusted(rho, cutoff.clone()))
}

/// Maximally mixed state on the full truncated space.
pub fn maximally_mixed(cutoff: &FockCutoff) -> TruncatedState {
    let d = cutoff.total_dim();
    let rho = Array2::from_diag(&Array1::from_elem(d, C64::new(1.0 / d as f64, 0.0)));
    TruncatedState { rho, cutoff: cutoff.clone() }
}

/* Composition ****************************************************************/

/// Tensor product of two states.
pub fn tensor(a: &TruncatedState, b: &TruncatedState) -> TruncatedState {
    TruncatedState {
        rho: linalg::kron(&a.rho, &b.rho),
        cutoff: a.cutoff.join(&b.cutoff),
    }
}

/// Partial trace keeping the listed modes (in their original order).
pub fn partial_trace(state: &TruncatedState, keep: &[usize]) -> Result<TruncatedState> {
    let n = state.mode_count();
    if keep.is_empty() {
        return Err(Error::InvalidModeSubset("keep set is empty".into()));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || *keep_sorted.last().unwrap() >= n {
        return Err(Error::InvalidModeSubset(format!(
            "keep set {keep:?} is not a subset of 0..{n}"
        )));
    }
    if keep_sorted.len() == n {
        return Ok(state.clone());
    }
    let dims = state.cutoff.dims();
    let traced: Vec<usize> = (0..n).filter(|m| !keep_sorted.contains(m)).collect();
    let out_cutoff = FockCutoff::new(keep_sorted.iter().map(|&m| dims[m]).collect())?;
    let dk = out_cutoff.total_dim();
    let dt: usize = traced.iter().map(|&m| dims[m]).product();

    // Map a flat multi-index over the listed modes to its offset in the
    // full-space composite index.
    let compose = |flat: usize, modes: &[usize]| -> usize {
        let mut rem = flat;
        let mut idx = 0;
        for &m in modes.iter().rev() {
            idx += (rem % dims[m]) * state.cutoff.stride(m);
            rem /= dims[m];
        }
        idx
    };

    let keep_offsets: Vec<usize> = (0..dk).map(|ik| compose(ik, &keep_sorted)).collect();
    let trace_offsets: Vec<usize> = (0..dt).map(|it| compose(it, &traced)).collect();

    let mut out = Array2::<C64>::zeros((dk, dk));
    for (ik, &base_i) in keep_offsets.iter().enumerate() {
        for (jk, &base_j) in keep_offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &off in &trace_offsets {
                acc += state.rho[(base_i + off, base_j + off)];
            }
            out[(ik, jk)] = acc;
        }
    }
    Ok(TruncatedState { rho: out, cutoff: out_cutoff })
}
