//! Bosonic occupation combinatorics: enumeration of occupation vectors over a
//! truncated level set, sub-matrix expansion with repeated rows and columns,
//! and the multi-boson transition probability.

use ndarray::{Array2, ArrayView2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permanent::permanent_ryser;

/// Cap on the number of enumerated occupation vectors.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// How many bosons sit in each level. Serializes as a plain integer array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Occupation(pub Vec<u32>);

impl Occupation {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Single-level occupation: `n` bosons in `level` (0-based) out of `d`.
    pub fn concentrated(n: u32, level: usize, d: usize) -> Self {
        let mut counts = vec![0u32; d];
        counts[level] = n;
        Occupation(counts)
    }
}

/// Number of weak compositions of `n` into `d` parts, C(n+d-1, n).
pub fn composition_count(n: u32, d: usize) -> u128 {
    let n = n as u128;
    let d = d as u128;
    let mut acc: u128 = 1;
    // built multiplicatively; every partial product is itself a binomial
    // coefficient, so the division is exact
    for i in 1..=n {
        acc = acc * (d - 1 + i) / i;
    }
    acc
}

/// All ways to place `n` indistinguishable bosons in `d` levels, in ascending
/// lexicographic order of the count vectors.
pub fn enumerate_occupations(n: u32, d: usize) -> Result<Vec<Occupation>> {
    if d == 0 {
        return Err(Error::invalid("need at least one level"));
    }
    let count = composition_count(n, d);
    if count > ENUMERATION_CAP {
        return Err(Error::invalid(format!(
            "occupation enumeration too large: C({}, {}) = {count} > {ENUMERATION_CAP}",
            n as usize + d - 1,
            n
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut current = vec![0u32; d];
    fn rec(slot: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Occupation>) {
        if slot + 1 == current.len() {
            current[slot] = remaining;
            out.push(Occupation(current.clone()));
            return;
        }
        for k in 0..=remaining {
            current[slot] = k;
            rec(slot + 1, remaining - k, current, out);
        }
    }
    rec(0, n, &mut current, &mut out);
    Ok(out)
}

/// Expand a d×d matrix into the N×N sub-matrix with `f_occ[l]` copies of row
/// `l` and `i_occ[k]` copies of column `k`, blocks in ascending level order.
pub fn expand_submatrix(
    m: &ArrayView2<Complex64>,
    i_occ: &Occupation,
    f_occ: &Occupation,
) -> Result<Array2<Complex64>> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::invalid("expand_submatrix needs a square matrix"));
    }
    if i_occ.len() != d || f_occ.len() != d {
        return Err(Error::invalid(format!(
            "occupation length must equal matrix dimension {d} (got {} and {})",
            i_occ.len(),
            f_occ.len()
        )));
    }
    if i_occ.total() != f_occ.total() {
        return Err(Error::invalid(format!(
            "boson number mismatch: {} in, {} out",
            i_occ.total(),
            f_occ.total()
        )));
    }
    let rows: Vec<usize> = repeated_indices(f_occ);
    let cols: Vec<usize> = repeated_indices(i_occ);
    let n = rows.len();
    Ok(Array2::from_shape_fn((n, n), |(r, c)| m[[rows[r], cols[c]]]))
}

fn repeated_indices(occ: &Occupation) -> Vec<usize> {
    occ.0
        .iter()
        .enumerate()
        .flat_map(|(level, &count)| std::iter::repeat_n(level, count as usize))
        .collect()
}

/// Factorials through 20 fit double precision exactly.
pub fn factorial(n: u32) -> f64 {
    const TABLE: [f64; 21] = [
        1.0,
        1.0,
        2.0,
        6.0,
        24.0,
        120.0,
        720.0,
        5040.0,
        40320.0,
        362880.0,
        3628800.0,
        39916800.0,
        479001600.0,
        6227020800.0,
        87178291200.0,
        1307674368000.0,
        20922789888000.0,
        355687428096000.0,
        6402373705728000.0,
        121645100408832000.0,
        2432902008176640000.0,
    ];
    TABLE[n as usize]
}

/// Transition probability between multi-boson eigenstates:
/// the squared-modulus permanent of the expanded sub-matrix, divided by the
/// occupation factorials of both sides.
pub fn transition_probability(
    m: &ArrayView2<Complex64>,
    i_occ: &Occupation,
    f_occ: &Occupation,
) -> Result<f64> {
    let sub = expand_submatrix(m, i_occ, f_occ)?;
    let per = permanent_ryser(&sub.view())?;
    let mut prefactor = 1.0;
    for &n in &i_occ.0 {
        prefactor /= factorial(n);
    }
    for &n in &f_occ.0 {
        prefactor /= factorial(n);
    }
    Ok(prefactor * per.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_unitary;
    use crate::permanent::permanent_naive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_counts_and_order() {
        let occs = enumerate_occupations(3, 5).unwrap();
        assert_eq!(occs.len(), 35);
        assert_eq!(occs.first().unwrap().0, vec![0, 0, 0, 0, 3]);
        assert_eq!(occs.last().unwrap().0, vec![3, 0, 0, 0, 0]);
        for w in occs.windows(2) {
            assert!(w[0].0 < w[1].0, "lexicographic order violated");
        }
        assert_eq!(enumerate_occupations(1, 7).unwrap().len(), 7);
        let zero = enumerate_occupations(0, 4).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].0, vec![0, 0, 0, 0]);
    }

    #[test]
    fn enumeration_guard_trips() {
        assert!(enumerate_occupations(30, 30).is_err());
    }

    #[test]
    fn expansion_shapes_and_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = haar_unitary(4, &mut rng);
        // single boson: 1x1 entry picks the (l, k) element
        let e_k = Occupation::concentrated(1, 2, 4);
        let e_l = Occupation::concentrated(1, 1, 4);
        let sub = expand_submatrix(&m.view(), &e_k, &e_l).unwrap();
        assert_eq!(sub.dim(), (1, 1));
        assert_eq!(sub[[0, 0]], m[[1, 2]]);
        // all bosons in the ground level: constant block
        let g = Occupation::concentrated(3, 0, 4);
        let sub = expand_submatrix(&m.view(), &g, &g).unwrap();
        assert_eq!(sub.dim(), (3, 3));
        for v in sub.iter() {
            assert_eq!(*v, m[[0, 0]]);
        }
        // order is N regardless of d
        let occs = enumerate_occupations(2, 4).unwrap();
        for i in &occs {
            for f in &occs {
                assert_eq!(expand_submatrix(&m.view(), i, f).unwrap().nrows(), 2);
            }
        }
    }

    #[test]
    fn expansion_rejects_mismatches() {
        let m = crate::linalg::identity(3);
        let a = Occupation(vec![1, 0, 0]);
        let b = Occupation(vec![1, 1, 0]);
        assert!(expand_submatrix(&m.view(), &a, &b).is_err());
        let short = Occupation(vec![1, 0]);
        assert!(expand_submatrix(&m.view(), &short, &a).is_err());
    }

    #[test]
    fn single_boson_probability_is_squared_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let m = haar_unitary(5, &mut rng);
        for k in 0..5 {
            for l in 0..5 {
                let p = transition_probability(
                    &m.view(),
                    &Occupation::concentrated(1, k, 5),
                    &Occupation::concentrated(1, l, 5),
                )
                .unwrap();
                assert!((p - m[[l, k]].norm_sqr()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn unitary_probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (n, d) in [(2u32, 4usize), (3, 5), (4, 4)] {
            let u = haar_unitary(d, &mut rng);
            let occs = enumerate_occupations(n, d).unwrap();
            let input = &occs[occs.len() / 2];
            let total: f64 = occs
                .iter()
                .map(|f| transition_probability(&u.view(), input, f).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-9, "n={n} d={d}: {total}");
        }
    }

    #[test]
    fn role_swap_with_conjugate_transpose_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let u = haar_unitary(4, &mut rng);
        let ut = crate::linalg::adjoint(&u);
        let occs = enumerate_occupations(3, 4).unwrap();
        for (i, f) in [(0usize, 5usize), (3, 3), (7, 12)] {
            let p1 = transition_probability(&u.view(), &occs[i], &occs[f]).unwrap();
            let p2 = transition_probability(&ut.view(), &occs[f], &occs[i]).unwrap();
            assert!((p1 - p2).abs() < 1e-12);
        }
    }

    #[test]
    fn relabeling_levels_permutes_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let u = haar_unitary(3, &mut rng);
        // swap levels 0 and 1 in both bases
        let perm = [1usize, 0, 2];
        let relabeled =
            Array2::from_shape_fn((3, 3), |(r, c)| u[[perm[r], perm[c]]]);
        let occs = enumerate_occupations(2, 3).unwrap();
        let mut original: Vec<f64> = Vec::new();
        let mut permuted: Vec<f64> = Vec::new();
        for i in &occs {
            for f in &occs {
                original.push(transition_probability(&u.view(), i, f).unwrap());
                let pi = Occupation(vec![i.0[1], i.0[0], i.0[2]]);
                let pf = Occupation(vec![f.0[1], f.0[0], f.0[2]]);
                permuted.push(transition_probability(&relabeled.view(), &pi, &pf).unwrap());
            }
        }
        for (a, b) in original.iter().zip(permuted.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ryser_and_naive_agree_inside_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let u = haar_unitary(4, &mut rng);
        let occs = enumerate_occupations(3, 4).unwrap();
        for i in occs.iter().step_by(5) {
            for f in occs.iter().step_by(7) {
                let sub = expand_submatrix(&u.view(), i, f).unwrap();
                let a = permanent_naive(&sub.view()).unwrap();
                let b = permanent_ryser(&sub.view()).unwrap();
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
