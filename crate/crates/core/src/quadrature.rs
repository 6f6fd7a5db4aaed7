//! Composite Gauss–Legendre quadrature for the moving-wall overlap integrals.
//!
//! The integrands are products of two sines with a quadratic chirp phase,
//! smooth but oscillatory. Fixed 16-point panels with panel-count doubling
//! give deterministic results; the panel seed scales with the sine orders and
//! the chirp strength so the first estimate already resolves the oscillation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the 16-point Gauss–Legendre rule on [-1, 1],
/// computed once by Newton iteration on the Legendre recurrence.
fn gauss_legendre_16() -> &'static ([f64; 16], [f64; 16]) {
    use std::sync::OnceLock;
    static RULE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 16usize;
        let mut nodes = [0.0f64; 16];
        let mut weights = [0.0f64; 16];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // Legendre P_n(x) and derivative via the three-term recurrence.
                let (mut p0, mut p1) = (1.0f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

/// One composite pass with `panels` equal panels over [0, 1].
fn composite_pass<F: Fn(f64) -> Complex64>(f: &F, panels: usize) -> Complex64 {
    let (nodes, weights) = gauss_legendre_16();
    let h = 1.0 / panels as f64;
    let half = 0.5 * h;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(weights.iter()) {
            acc += f(mid + half * x) * *w;
        }
        total += acc * half;
    }
    total
}

/// Integrate a complex-valued function over [0, 1], doubling the panel count
/// until two successive estimates agree to `tol` absolutely.
pub fn integrate_01<F: Fn(f64) -> Complex64>(f: F, seed_panels: usize, tol: f64) -> Result<Complex64> {
    let mut panels = seed_panels.max(1);
    let mut prev = composite_pass(&f, panels);
    for _ in 0..20 {
        panels *= 2;
        let cur = composite_pass(&f, panels);
        if (cur - prev).norm() < tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::numerical(format!(
        "quadrature did not converge: achieved {:.3e} at {} panels (target {:.1e})",
        (composite_pass(&f, panels) - prev).norm(),
        panels,
        tol,
    )))
}

/// Overlap of two box modes through a quadratic chirp phase:
///
/// ```text
/// (2/λ) ∫₀^λ exp(i·s·x²/(2λ)) sin(jπx/λ) sin(kπx/λ) dx
/// ```
///
/// after substituting u = x/λ. The signed speed `s` selects the expansion
/// (`+v`, final box) or its conjugate (`-v`, initial box) branch.
pub fn chirped_overlap(j: usize, k: usize, lambda: f64, s: f64) -> Result<Complex64> {
    let a = 0.5 * s * lambda;
    let jf = j as f64;
    let kf = k as f64;
    let seed = j.max(k).max((s.abs() * lambda) as usize) + 2;
    integrate_01(
        move |u| {
            let phase = Complex64::from_polar(1.0, a * u * u);
            2.0 * phase * (jf * std::f64::consts::PI * u).sin() * (kf * std::f64::consts::PI * u).sin()
        },
        seed,
        1e-10,
    )
}
