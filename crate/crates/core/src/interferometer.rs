//! Compile a unitary into a rectangular mesh of variable beam splitters plus
//! output phases, resynthesize the matrix from a program, and perturb program
//! angles for noise studies.
//!
//! The two-mode primitive acting on modes (a, a+1) carries the block
//!
//! ```text
//! | e^{iφ} cosθ   −sinθ |
//! | e^{iφ} sinθ    cosθ |
//! ```
//!
//! Elimination alternates column sweeps from the right with row sweeps from
//! the left; left factors are then commuted through the residual diagonal so
//! the whole matrix reads D · T_k ⋯ T_1 with the gates in application order.

use ndarray::ArrayView2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Unitarity defect accepted by the decomposition.
pub const UNITARY_TOLERANCE: f64 = 1e-8;
/// Entries already below this are treated as eliminated.
const NULL_ENTRY: f64 = 1e-14;

/// One variable beam splitter in the mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TGate {
    /// Mesh column (time step), 1-based.
    pub step: usize,
    /// Acts on modes a and a+1, 1-based.
    pub a: usize,
    pub theta: f64,
    pub phi: f64,
}

/// Ordered gate list plus output phases realizing a d×d unitary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterferometerProgram {
    pub dim: usize,
    /// Gates in application order (first gate hits the input first).
    pub gates: Vec<TGate>,
    /// Phases of the output diagonal, one per mode, in [0, 2π).
    pub output_phases: Vec<f64>,
    /// Frobenius distance from the compiled matrix to its unitary projection;
    /// zero when the input was already unitary.
    pub projection_residual: f64,
}

/// Embed the two-mode block into a d×d identity at modes (a, a+1), 1-based.
pub fn make_t_matrix(a: usize, theta: f64, phi: f64, d: usize) -> Result<CMatrix> {
    if a < 1 || a >= d {
        return Err(Error::invalid(format!("mode index a={a} out of range for d={d}")));
    }
    let mut t = linalg::identity(d);
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phi);
    t[[a - 1, a - 1]] = e * c;
    t[[a - 1, a]] = Complex64::new(-s, 0.0);
    t[[a, a - 1]] = e * s;
    t[[a, a]] = Complex64::new(c, 0.0);
    Ok(t)
}

/// In-place left multiplication by T(a, θ, φ): mixes rows a-1 and a (0-based).
fn apply_t_left(m: &mut CMatrix, a: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phi);
    let d = m.ncols();
    for col in 0..d {
        let top = m[[a - 1, col]];
        let bot = m[[a, col]];
        m[[a - 1, col]] = e * c * top - s * bot;
        m[[a, col]] = e * s * top + c * bot;
    }
}

/// In-place right multiplication by T(a, θ, φ)†: mixes columns a-1 and a.
fn apply_t_adjoint_right(m: &mut CMatrix, a: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, -phi);
    let d = m.nrows();
    for row in 0..d {
        let left = m[[row, a - 1]];
        let right = m[[row, a]];
        m[[row, a - 1]] = e * c * left - s * right;
        m[[row, a]] = e * s * left + c * right;
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let mut p = phi % TAU;
    if p < 0.0 {
        p += TAU;
    }
    p
}

/// Nearest unitary in Frobenius norm (polar factor) and the distance to it.
pub fn unitary_project(m: &ArrayView2<Complex64>) -> Result<(CMatrix, f64)> {
    let d = m.nrows();
    if m.ncols() != d || d == 0 {
        return Err(Error::invalid("unitary projection needs a non-empty square matrix"));
    }
    let owned = m.to_owned();
    let gram = linalg::adjoint(&owned).dot(&owned);
    let (eig, vecs) = linalg::hermitian_eigen(&gram)?;
    let sigma: Vec<f64> = eig.iter().map(|x| x.max(0.0).sqrt()).collect();
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    if sigma.iter().any(|&s| s <= 1e-12 * smax) || smax == 0.0 {
        return Err(Error::numerical("matrix is rank deficient; no unique polar factor"));
    }
    // U = M · V diag(1/σ) V†
    let mut inv_root = CMatrix::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += vecs[[i, k]] * (1.0 / sigma[k]) * vecs[[j, k]].conj();
            }
            inv_root[[i, j]] = acc;
        }
    }
    let u = owned.dot(&inv_root);
    let residual = sigma.iter().map(|s| (s - 1.0) * (s - 1.0)).sum::<f64>().sqrt();
    Ok((u, residual))
}

/// Decompose a unitary into the rectangular mesh. The input must be unitary
/// to [`UNITARY_TOLERANCE`]; project first for near-unitary matrices.
pub fn clements_decompose(u: &ArrayView2<Complex64>) -> Result<InterferometerProgram> {
    let d = u.nrows();
    if u.ncols() != d || d == 0 {
        return Err(Error::invalid("decomposition needs a non-empty square matrix"));
    }
    let owned = u.to_owned();
    let defect = linalg::unitarity_defect(&owned);
    if defect > UNITARY_TOLERANCE {
        return Err(Error::numerical(format!(
            "input is not unitary: defect {defect:.3e} exceeds {UNITARY_TOLERANCE:.0e}"
        )));
    }
    let mut m = owned;
    let mut right: Vec<(usize, f64, f64)> = Vec::new();
    let mut left: Vec<(usize, f64, f64)> = Vec::new();

    for i in 1..d {
        if i % 2 == 1 {
            // climb the anti-diagonal, zeroing with column mixes from the right
            for j in 0..i {
                let r = d - 1 - j;
                let a = i - j;
                let x = m[[r, a - 1]];
                let y = m[[r, a]];
                let (theta, phi) = if x.norm() < NULL_ENTRY {
                    (0.0, 0.0)
                } else {
                    (x.norm().atan2(y.norm()), x.arg() - y.arg())
                };
                apply_t_adjoint_right(&mut m, a, theta, phi);
                right.push((a, theta, phi));
            }
        } else {
            // descend, zeroing with row mixes from the left
            for j in 1..=i {
                let r = d + j - i - 1;
                let c = j - 1;
                let x = m[[r, c]];
                let y = m[[r - 1, c]];
                let (theta, phi) = if x.norm() < NULL_ENTRY {
                    (0.0, 0.0)
                } else {
                    (x.norm().atan2(y.norm()), (-x).arg() - y.arg())
                };
                apply_t_left(&mut m, r, theta, phi);
                left.push((r, theta, phi));
            }
        }
    }

    // Residual diagonal, forced unimodular; deviations are covered by the
    // unitarity tolerance above.
    let mut diag: Vec<Complex64> = (0..d)
        .map(|i| {
            let z = m[[i, i]];
            if z.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                z / z.norm()
            }
        })
        .collect();

    // Commute each left factor through the diagonal:
    // T†(θ, φ) D = D' T(θ, φ') with φ' = arg(−d_a / d_{a+1}),
    // d'_a = −e^{−iφ} d_{a+1}, d'_{a+1} = d_{a+1}.
    let mut pushed: Vec<(usize, f64, f64)> = Vec::with_capacity(left.len());
    for &(a, theta, phi) in left.iter().rev() {
        if theta == 0.0 && phi == 0.0 {
            // null gate commutes with the diagonal as-is
            pushed.push((a, 0.0, 0.0));
            continue;
        }
        let da = diag[a - 1];
        let db = diag[a];
        let phi2 = (-da / db).arg();
        diag[a - 1] = -Complex64::from_polar(1.0, -phi) * db;
        pushed.push((a, theta, phi2));
    }

    // Application order: right-eliminations first, then the pushed factors.
    let mut gates = Vec::with_capacity(right.len() + pushed.len());
    let mut last_step = vec![0usize; d + 1];
    for &(a, theta, phi) in right.iter().chain(pushed.iter()) {
        let step = last_step[a].max(last_step[a + 1]) + 1;
        last_step[a] = step;
        last_step[a + 1] = step;
        gates.push(TGate { step, a, theta, phi: wrap_phase(phi) });
    }

    Ok(InterferometerProgram {
        dim: d,
        gates,
        output_phases: diag.iter().map(|z| wrap_phase(z.arg())).collect(),
        projection_residual: 0.0,
    })
}

/// Project a near-unitary matrix and decompose the polar factor, recording
/// the projection distance on the program.
pub fn compile(m: &ArrayView2<Complex64>) -> Result<InterferometerProgram> {
    let (u, residual) = unitary_project(m)?;
    let mut program = clements_decompose(&u.view())?;
    program.projection_residual = residual;
    Ok(program)
}

/// Multiply the program out: D · T_k ⋯ T_1 with gates in recorded order.
pub fn resynthesize(p: &InterferometerProgram) -> CMatrix {
    let mut m = linalg::identity(p.dim);
    for g in &p.gates {
        apply_t_left(&mut m, g.a, g.theta, g.phi);
    }
    for (i, &phase) in p.output_phases.iter().enumerate() {
        let e = Complex64::from_polar(1.0, phase);
        for col in 0..p.dim {
            m[[i, col]] *= e;
        }
    }
    m
}

/// Shift every beam-splitter angle and output phase by an independent draw
/// from (−epsilon, +epsilon). Deterministic for a given seed; epsilon = 0
/// returns the program unchanged.
pub fn perturb(p: &InterferometerProgram, epsilon: f64, seed: u64) -> Result<InterferometerProgram> {
    if epsilon < 0.0 {
        return Err(Error::invalid("noise half-width must be non-negative"));
    }
    let mut out = p.clone();
    if epsilon == 0.0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in &mut out.gates {
        g.theta += rng.gen_range(-epsilon..epsilon);
        g.phi += rng.gen_range(-epsilon..epsilon);
    }
    for phase in &mut out.output_phases {
        *phase += rng.gen_range(-epsilon..epsilon);
    }
    Ok(out)
}
