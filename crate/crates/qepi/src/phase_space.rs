//! Characteristic functions and Wigner-function grids.
//!
//! The Wigner function is evaluated through the Fock-basis closed form (the
//! associated-Laguerre kernel) rather than a Fourier transform of the
//! characteristic function, which keeps the accuracy independent of any grid
//! resolution. The overall normalization — `W(0,0) = ⟨Π⟩/2π` under the
//! `[Q,P] = 2i` convention — is pinned by the parity identity and recorded in
//! the ledger.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::convention::LEDGER;
use crate::error::{Error, Result};
use crate::fock::{quadrature_operator, QuadratureIndex, TruncatedState};
use crate::linalg;

/// Tolerance on the grid-summed normalization of shipped Wigner grids.
pub const GRID_TOL: f64 = 1e-3;

/// `χ_ρ(ξ) = tr[ρ·e^{iξᵀJR}]`.
///
/// `xi` has one `(ξ_q, ξ_p)` pair per mode; `ξᵀJR = Σₘ(ξ_q P − ξ_p Q)` under
/// the block form of `J`.
pub fn characteristic_function(state: &TruncatedState, xi: &[f64]) -> Result<C64> {
    let n = state.mode_count();
    if xi.len() != 2 * n {
        return Err(Error::InvalidParameter(format!(
            "phase-space point has length {}, expected {}",
            xi.len(),
            2 * n
        )));
    }
    let cutoff = state.cutoff();
    let d = state.total_dim();
    let mut generator = Array2::<C64>::zeros((d, d));
    for m in 0..n {
        let q = quadrature_operator(cutoff, QuadratureIndex::q(m));
        let p = quadrature_operator(cutoff, QuadratureIndex::p(m));
        generator = generator + p.mapv(|z| z * xi[2 * m]) - q.mapv(|z| z * xi[2 * m + 1]);
    }
    let w = linalg::expi_hermitian(&generator, 1.0)?;
    let mut acc = C64::new(0.0, 0.0);
    for (i, row) in w.rows().into_iter().enumerate() {
        for (j, &wij) in row.iter().enumerate() {
            acc += state.rho()[(j, i)] * wij;
        }
    }
    Ok(acc)
}

/// A sampled Wigner function on a rectangular grid.
#[derive(Debug, Clone, Serialize)]
pub struct WignerGrid {
    pub q_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    /// `values[(i, j)] = W(q_axis[i], p_axis[j])`.
    pub values: Array2<f64>,
    pub cell_area: f64,
    /// Largest imaginary part seen before the values were declared real.
    pub max_imag: f64,
    pub warnings: Vec<String>,
}

impl WignerGrid {
    /// Grid-summed integral (should be 1 within [`GRID_TOL`]).
    pub fn integral(&self) -> f64 {
        self.values.sum() * self.cell_area
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Default axes: `[−6, 6]` with 241 points, wide enough that vacuum boundary
/// values sit below 1e−7.
pub fn default_axes() -> (Vec<f64>, Vec<f64>) {
    let axis: Vec<f64> = (0..241).map(|i| -6.0 + 0.05 * i as f64).collect();
    (axis.clone(), axis)
}

/// Evaluate the Wigner function of a single-mode state on a grid.
pub fn wigner_grid(state: &TruncatedState, q_axis: &[f64], p_axis: &[f64]) -> Result<WignerGrid> {
    if state.mode_count() != 1 {
        return Err(Error::InvalidParameter(
            "Wigner grids are computed for single-mode states".into(),
        ));
    }
    if q_axis.len() < 2 || p_axis.len() < 2 {
        return Err(Error::InvalidParameter("grid axes need at least 2 points".into()));
    }
    let rho = state.rho();
    let d = state.total_dim();

    let rows: Vec<(Vec<f64>, f64)> = q_axis
        .par_iter()
        .map(|&q| {
            let mut row = Vec::with_capacity(p_axis.len());
            let mut max_imag = 0.0f64;
            for &p in p_axis {
                let w = wigner_point(rho, d, q, p);
                max_imag = max_imag.max(w.im.abs());
                row.push(w.re);
            }
            (row, max_imag)
        })
        .collect();

    let mut values = Array2::<f64>::zeros((q_axis.len(), p_axis.len()));
    let mut max_imag = 0.0f64;
    for (i, (row, mi)) in rows.into_iter().enumerate() {
        max_imag = max_imag.max(mi);
        for (j, v) in row.into_iter().enumerate() {
            values[(i, j)] = v;
        }
    }

    let dq = q_axis[1] - q_axis[0];
    let dp = p_axis[1] - p_axis[0];
    let mut grid = WignerGrid {
        q_axis: q_axis.to_vec(),
        p_axis: p_axis.to_vec(),
        values,
        cell_area: dq * dp,
        max_imag,
        warnings: Vec::new(),
    };

    let peak = grid.max_value().abs().max(1e-300);
    let (nq, np) = grid.values.dim();
    let mut boundary_max = 0.0f64;
    for i in 0..nq {
        boundary_max = boundary_max.max(grid.values[(i, 0)].abs());
        boundary_max = boundary_max.max(grid.values[(i, np - 1)].abs());
    }
    for j in 0..np {
        boundary_max = boundary_max.max(grid.values[(0, j)].abs());
        boundary_max = boundary_max.max(grid.values[(nq - 1, j)].abs());
    }
    if boundary_max > 1e-6 * peak {
        grid.warnings.push(format!(
            "grid extent may be insufficient: boundary magnitude {boundary_max:.3e} \
             exceeds 1e-6 of peak {peak:.3e}"
        ));
    }
    let integral = grid.integral();
    if (integral - 1.0).abs() > GRID_TOL {
        grid.warnings.push(format!(
            "grid integral {integral:.6} deviates from 1 beyond {GRID_TOL:.0e}"
        ));
    }
    Ok(grid)
}

/// Wigner value at one phase-space point via the associated-Laguerre kernel:
/// for `m ≥ n`,
/// `W_{|m⟩⟨n|} = (1/2π)e^{−r²/2}(−1)ⁿ√(n!/m!)(q−ip)^{m−n}L_n^{m−n}(r²)`,
/// with the `m < n` kernel its conjugate.
fn wigner_point(rho: &Array2<C64>, d: usize, q: f64, p: f64) -> C64 {
    let r2 = q * q + p * p;
    let z = C64::new(q, -p);
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..d {
        // Scaled prefactor T(n) = Π_{j=n+1}^{n+k} z/√j, starting at z^k/√(k!).
        let mut t = C64::new(1.0, 0.0);
        for j in 1..=k {
            t *= z / C64::new((j as f64).sqrt(), 0.0);
        }
        // Associated Laguerre recurrence in n at fixed k.
        let mut l_prev = 0.0f64;
        let mut l_cur = 1.0f64;
        for n in 0..d - k {
            let m = n + k;
            let kernel = t
                * C64::new(if n % 2 == 0 { l_cur } else { -l_cur }, 0.0);
            acc += rho[(m, n)] * kernel;
            if k > 0 {
                acc += rho[(n, m)] * kernel.conj();
            }
            // Advance T and L to n+1.
            t *= C64::new(((n + 1) as f64 / (n + 1 + k) as f64).sqrt(), 0.0);
            let nf = n as f64;
            let kf = k as f64;
            let l_next = ((2.0 * nf + kf + 1.0 - r2) * l_cur - (nf + kf) * l_prev) / (nf + 1.0);
            l_prev = l_cur;
            l_cur = l_next;
        }
    }
    acc * C64::new(LEDGER.wigner_origin_scale * (-r2 / 2.0).exp(), 0.0)
}
