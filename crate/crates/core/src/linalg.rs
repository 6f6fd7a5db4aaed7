//! Dense complex linear algebra for small matrices.
//!
//! Everything in the pipeline works on matrices no larger than the truncation
//! cap (64), so a cyclic Jacobi eigensolver for Hermitian matrices covers all
//! spectral needs (unitarity fidelity, polar projection) without pulling in a
//! LAPACK backend.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;

/// Conjugate transpose.
pub fn adjoint(m: &CMatrix) -> CMatrix {
    let (r, c) = m.dim();
    CMatrix::from_shape_fn((c, r), |(i, j)| m[[j, i]].conj())
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::from_shape_fn((d, d), |(i, j)| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Deviation of `m` from unitarity, as the max-norm of m†m − I.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let d = m.nrows();
    max_abs_diff(&adjoint(m).dot(m), &identity(d))
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, v)` with `h = v · diag(eigenvalues) · v†`. The
/// eigenvalues are unsorted (Jacobi order); callers sort if they care.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Array1<f64>, CMatrix)> {
    let d = h.nrows();
    if h.ncols() != d {
        return Err(Error::invalid("hermitian_eigen needs a square matrix"));
    }
    let mut a = h.clone();
    let mut v = identity(d);
    if d < 2 {
        let eig = Array1::from_iter(a.diag().iter().map(|z| z.re));
        return Ok((eig, v));
    }
    let scale = frobenius(&a).max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                off += a[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            let eig = Array1::from_iter(a.diag().iter().map(|z| z.re));
            return Ok((eig, v));
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let hpq = a[[p, q]];
                let habs = hpq.norm();
                if habs <= tol * 1e-2 {
                    continue;
                }
                // Phase that makes the (p,q) entry real, then a real Givens
                // rotation that zeroes it.
                let u = hpq / habs;
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                let tau = (aqq - app) / (2.0 * habs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotation R: R[p][p]=c, R[p][q]=s, R[q][p]=-s*conj(u), R[q][q]=c*conj(u).
                let uc = u.conj();
                // a <- a R (columns p, q)
                for r in 0..d {
                    let arp = a[[r, p]];
                    let arq = a[[r, q]];
                    a[[r, p]] = arp * c - arq * (uc * s);
                    a[[r, q]] = arp * s + arq * (uc * c);
                }
                // a <- R† a (rows p, q)
                for col in 0..d {
                    let apc = a[[p, col]];
                    let aqc = a[[q, col]];
                    a[[p, col]] = apc * c - aqc * (u * s);
                    a[[q, col]] = apc * s + aqc * (u * c);
                }
                // Clean the rotated pair against rounding drift.
                a[[p, q]] = Complex64::new(0.0, 0.0);
                a[[q, p]] = Complex64::new(0.0, 0.0);
                a[[p, p]] = Complex64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = Complex64::new(a[[q, q]].re, 0.0);
                // v <- v R
                for r in 0..d {
                    let vrp = v[[r, p]];
                    let vrq = v[[r, q]];
                    v[[r, p]] = vrp * c - vrq * (uc * s);
                    v[[r, q]] = vrp * s + vrq * (uc * c);
                }
            }
        }
    }
    Err(Error::numerical(
        "Jacobi eigensolver did not converge in 100 sweeps",
    ))
}

/// Singular values of `m` (unsorted), as positive square roots of the
/// eigenvalues of m†m.
pub fn singular_values(m: &CMatrix) -> Result<Array1<f64>> {
    let gram = adjoint(m).dot(m);
    let (eig, _) = hermitian_eigen(&gram)?;
    Ok(eig.mapv(|x| x.max(0.0).sqrt()))
}

/// Haar-distributed random unitary: Gram–Schmidt of a complex Gaussian
/// matrix, with the positive-diagonal phase convention.
pub fn haar_unitary<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let mut z = CMatrix::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            // Box-Muller pairs; the overall scale cancels in orthonormalization.
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (-2.0 * u1.ln()).sqrt();
            z[[i, j]] = Complex64::new(r * u2.cos(), r * u2.sin());
        }
    }
    let mut q = CMatrix::zeros((d, d));
    for jcol in 0..d {
        let mut col: Vec<Complex64> = (0..d).map(|r| z[[r, jcol]]).collect();
        for prev in 0..jcol {
            let proj: Complex64 = (0..d).map(|r| q[[r, prev]].conj() * col[r]).sum();
            for r in 0..d {
                col[r] -= proj * q[[r, prev]];
            }
        }
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..d {
            q[[r, jcol]] = col[r] / norm;
        }
    }
    q
}
