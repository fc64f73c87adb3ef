//! Dense complex linear algebra helpers shared by every module.
//!
//! All matrix exponentials in this crate are of (anti-)Hermitian generators,
//! so they go through the Hermitian eigensolver rather than a general
//! scaling-and-squaring routine.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Conjugate transpose.
pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// `(M + M†)/2`.
pub fn hermitize(m: &Array2<C64>) -> Array2<C64> {
    let md = dagger(m);
    (m + &md).mapv(|z| z * 0.5)
}

/// Frobenius norm.
pub fn fro_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖M − M†‖_F`.
pub fn herm_defect(m: &Array2<C64>) -> f64 {
    fro_norm(&(m - &dagger(m)))
}

pub fn trace(m: &Array2<C64>) -> C64 {
    m.diag().sum()
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending,
/// eigenvectors as columns (`V·diag(λ)·V† = M`).
///
/// LAPACK sees a row-major array as its transpose, so the raw `eigh` output
/// diagonalizes `Mᵀ = M̄`; conjugating the vectors restores the column
/// convention.
pub fn eigh(m: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let (vals, vecs) = m
        .eigh(UPLO::Lower)
        .map_err(|e| Error::InvalidParameter(format!("eigensolver failure: {e}")))?;
    Ok((vals, vecs.mapv(|z| z.conj())))
}

/// Eigenvalues only.
pub fn eigvalsh(m: &Array2<C64>) -> Result<Array1<f64>> {
    Ok(eigh(m)?.0)
}

/// `exp(i·s·H)` for Hermitian `H`; exactly unitary up to eigensolver roundoff.
pub fn expi_hermitian(h: &Array2<C64>, s: f64) -> Result<Array2<C64>> {
    let (vals, vecs) = eigh(h)?;
    let phases = Array1::from_iter(vals.iter().map(|&v| C64::from_polar(1.0, s * v)));
    Ok(scale_columns(&vecs, &phases).dot(&dagger(&vecs)))
}

/// `V · diag(d)` without materializing the diagonal matrix.
pub fn scale_columns(v: &Array2<C64>, d: &Array1<C64>) -> Array2<C64> {
    let mut out = v.clone();
    for (mut col, &s) in out.columns_mut().into_iter().zip(d.iter()) {
        col.mapv_inplace(|z| z * s);
    }
    out
}

/// `U ρ U†`.
pub fn conjugate(u: &Array2<C64>, rho: &Array2<C64>) -> Array2<C64> {
    u.dot(rho).dot(&dagger(u))
}

/// Trace distance `½‖A − B‖₁` for Hermitian `A`, `B`.
pub fn trace_distance(a: &Array2<C64>, b: &Array2<C64>) -> Result<f64> {
    let diff = hermitize(&(a - b));
    let vals = eigvalsh(&diff)?;
    Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
}

/// Kronecker product.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::<C64>::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Identity matrix.
pub fn eye(d: usize) -> Array2<C64> {
    Array2::from_diag(&Array1::from_elem(d, C64::new(1.0, 0.0)))
}

/// Real part of `tr[A·B]`, evaluated without forming the product.
pub fn trace_prod_re(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    // tr[AB] = Σ_ij A_ij B_ji
    let mut acc = C64::new(0.0, 0.0);
    for (i, row) in a.rows().into_iter().enumerate() {
        for (j, &aij) in row.iter().enumerate() {
            acc += aij * b[(j, i)];
        }
    }
    acc.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pauli_y() -> Array2<C64> {
        let mut m = Array2::zeros((2, 2));
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m
    }

    #[test]
    fn expi_of_pauli_y_is_rotation() {
        // exp(iθY) = cosθ·I + i·sinθ·Y
        let theta = 0.3;
        let u = expi_hermitian(&pauli_y(), theta).unwrap();
        assert_abs_diff_eq!(u[(0, 0)].re, theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(u[(0, 1)].re, theta.sin(), epsilon = 1e-12);
        let udag_u = dagger(&u).dot(&u);
        assert!(fro_norm(&(&udag_u - &eye(2))) < 1e-12);
    }

    #[test]
    fn kron_dims_and_values() {
        let a = eye(2);
        let y = pauli_y();
        let k = kron(&a, &y);
        assert_eq!(k.dim(), (4, 4));
        assert_eq!(k[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(k[(2, 3)], C64::new(0.0, -1.0));
        assert_eq!(k[(0, 3)], C64::new(0.0, 0.0));
    }

    #[test]
    fn trace_distance_of_orthogonal_pures_is_one() {
        let mut a = Array2::<C64>::zeros((2, 2));
        a[(0, 0)] = C64::new(1.0, 0.0);
        let mut b = Array2::<C64>::zeros((2, 2));
        b[(1, 1)] = C64::new(1.0, 0.0);
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), 1.0, epsilon = 1e-12);
    }
}
