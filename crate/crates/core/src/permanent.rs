//! Matrix permanents: a factorial-time permutation sum used as an oracle, and
//! Ryser's inclusion–exclusion formula with Gray-code subset updates for
//! production use.

use ndarray::ArrayView2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest order accepted by the permutation-sum oracle.
pub const NAIVE_MAX: usize = 9;
/// Largest order accepted by the Ryser kernel.
pub const RYSER_MAX: usize = 30;

/// Permanent by explicit sum over all permutations. Exponential in the worst
/// way; guarded to n ≤ 9 and intended as the independent reference for tests.
pub fn permanent_naive(m: &ArrayView2<Complex64>) -> Result<Complex64> {
    let n = square_order(m)?;
    if n > NAIVE_MAX {
        return Err(Error::invalid(format!(
            "permanent_naive is guarded to n <= {NAIVE_MAX}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut used = vec![false; n];
    let mut total = Complex64::new(0.0, 0.0);
    fn rec(
        m: &ArrayView2<Complex64>,
        row: usize,
        n: usize,
        used: &mut [bool],
        prod: Complex64,
        total: &mut Complex64,
    ) {
        if row == n {
            *total += prod;
            return;
        }
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                rec(m, row + 1, n, used, prod * m[[row, col]], total);
                used[col] = false;
            }
        }
    }
    rec(m, 0, n, &mut used, Complex64::new(1.0, 0.0), &mut total);
    Ok(total)
}

/// Permanent by Ryser's formula over column subsets, visiting the 2ⁿ − 1
/// non-empty subsets in Gray-code order so each step updates the row sums by
/// a single column.
pub fn permanent_ryser(m: &ArrayView2<Complex64>) -> Result<Complex64> {
    let n = square_order(m)?;
    if n > RYSER_MAX {
        return Err(Error::invalid(format!(
            "permanent_ryser is guarded to n <= {RYSER_MAX}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let next = k ^ (k >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        if next & (1 << flipped) != 0 {
            for (r, rs) in row_sums.iter_mut().enumerate() {
                *rs += m[[r, flipped]];
            }
        } else {
            for (r, rs) in row_sums.iter_mut().enumerate() {
                *rs -= m[[r, flipped]];
            }
        }
        gray = next;
        let mut prod = Complex64::new(1.0, 0.0);
        for rs in &row_sums {
            prod *= *rs;
        }
        if next.count_ones() % 2 == 0 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    // Σ_S (−1)^{n−|S|} Π row sums; the loop accumulated (−1)^{|S|+1} signs.
    if n % 2 == 0 {
        total = -total;
    }
    Ok(total)
}

fn square_order(m: &ArrayView2<Complex64>) -> Result<usize> {
    let (r, c) = m.dim();
    if r != c {
        return Err(Error::invalid(format!("permanent needs a square matrix, got {r}x{c}")));
    }
    Ok(r)
}
