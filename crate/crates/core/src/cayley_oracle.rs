//! Brute-force ground truth for the spectrum.
//!
//! Closed walks at the identity are counted by iterating the adjacency
//! operator over all `n!` permutations; the walk counts are the moments of
//! the spectral measure, and the multiplicities are recovered by solving the
//! square Vandermonde system on the integer nodes `-(n-1)..=n-1` exactly.

use std::ops::AddAssign;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_limit, Error, Result};
use crate::factorial;
use crate::spectrum::SpectrumTable;

/// Largest `n` accepted by [`closed_walk_counts`] (9! = 362880 states).
pub const MAX_ORACLE_N: usize = 9;

/// Largest `n` whose factorial fits a `u64` index.
pub const MAX_RANK_N: usize = 20;

/// Lehmer-code index of a permutation of `1..=n`.
///
/// Digit `i` counts later entries smaller than entry `i`, weighted by
/// `(n - 1 - i)!`, so the identity is 0 and the reversal is `n! - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationIndex {
    n: usize,
    code: u64,
}

impl PermutationIndex {
    pub fn new(n: usize, code: u64) -> Result<Self> {
        check_limit("permutation rank", n, MAX_RANK_N)?;
        let count = small_factorial(n);
        if code >= count {
            return Err(Error::InvalidArgument(format!(
                "index {code} out of range 0..{count} for n = {n}"
            )));
        }
        Ok(PermutationIndex { n, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> u64 {
        self.code
    }
}

fn small_factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Index of `perm`, given in one-line notation over `1..=n`.
pub fn rank(perm: &[usize]) -> Result<PermutationIndex> {
    let n = perm.len();
    check_limit("permutation rank", n, MAX_RANK_N)?;
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 1..={n}"
            )));
        }
    }
    let mut code = 0u64;
    for (i, &v) in perm.iter().enumerate() {
        let smaller_after = perm[i + 1..].iter().filter(|&&w| w < v).count() as u64;
        code = code * (n - i) as u64 + smaller_after;
    }
    Ok(PermutationIndex { n, code })
}

/// Inverse of [`rank`].
pub fn unrank(index: PermutationIndex) -> Vec<usize> {
    let n = index.n;
    let mut digits = vec![0usize; n];
    let mut code = index.code;
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (code % base) as usize;
        code /= base;
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Closed-walk counts at the identity, `W_0..=W_{k_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCountSequence {
    pub n: usize,
    pub counts: Vec<BigUint>,
}

impl WalkCountSequence {
    /// `n! · W_k`, the trace of `J_n^k` on the group algebra.
    pub fn trace(&self, k: usize) -> BigUint {
        factorial(self.n) * &self.counts[k]
    }
}

/// `neighbours[g * (n-1) + (i-1)]` is the index of `perm(g) · (i n)`.
fn neighbour_table(n: usize) -> Vec<u32> {
    let states = small_factorial(n) as usize;
    let degree = n - 1;
    let mut table = vec![0u32; states * degree];
    for code in 0..states {
        let perm = unrank(PermutationIndex {
            n,
            code: code as u64,
        });
        for i in 0..degree {
            let mut next = perm.clone();
            // right multiplication by (i+1 n) swaps positions i and n-1
            next.swap(i, n - 1);
            table[code * degree + i] = rank(&next).expect("valid permutation").code as u32;
        }
    }
    table
}

fn iterate_walks<T>(states: usize, degree: usize, table: &[u32], k_max: usize) -> Vec<T>
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
{
    let mut current = vec![T::zero(); states];
    current[0] = T::one();
    let mut counts = vec![T::one()];
    for _ in 0..k_max {
        let mut next = vec![T::zero(); states];
        for (g, value) in current.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            for &h in &table[g * degree..(g + 1) * degree] {
                next[h as usize] += value;
            }
        }
        counts.push(next[0].clone());
        current = next;
    }
    counts
}

/// Number of `k`-tuples `(i_1..i_k)` in `1..n` with `(i_1 n)···(i_k n) = id`,
/// for `k = 0..=k_max`, by dynamic programming over all `n!` permutations.
pub fn closed_walk_counts(n: usize, k_max: usize) -> Result<WalkCountSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_limit("closed-walk oracle", n, MAX_ORACLE_N)?;
    let states = small_factorial(n) as usize;
    let degree = n - 1;
    let table = neighbour_table(n);

    // entries never exceed the total mass (n-1)^k_max
    let fits_u128 = (degree as f64).log2() * k_max as f64 <= 126.0;
    let counts = if fits_u128 {
        iterate_walks::<u128>(states, degree, &table, k_max)
            .into_iter()
            .map(BigUint::from)
            .collect()
    } else {
        iterate_walks::<BigUint>(states, degree, &table, k_max)
    };
    Ok(WalkCountSequence { n, counts })
}

/// Solves `sum_j x_j · nodes[j]^k = rhs[k]` for `k = 0..nodes.len()` over the rationals.
/// Nodes must be distinct.
pub fn solve_vandermonde(nodes: &[i64], rhs: &[BigInt]) -> Vec<BigRational> {
    let size = nodes.len();
    assert_eq!(rhs.len(), size, "square system expected");
    let mut rows: Vec<Vec<BigRational>> = (0..size)
        .map(|k| {
            let mut row: Vec<BigRational> = nodes
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x).pow(k as u32)))
                .collect();
            row.push(BigRational::from_integer(rhs[k].clone()));
            row
        })
        .collect();

    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .expect("distinct nodes give a nonsingular system");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for entry in rows[col][col..].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= &factor * p;
            }
        }
    }
    rows.into_iter().map(|mut row| row.pop().unwrap()).collect()
}

/// Multiplicity table recovered from walk counts alone.
///
/// Assumes the eigenvalues are integers in `[-(n-1), n-1]` and solves for
/// their multiplicities from the first `2n - 1` moments. Panics if the
/// solution is not a non-negative integer vector summing to `n!`.
pub fn oracle_multiplicity_table(n: usize) -> Result<SpectrumTable> {
    let walks = closed_walk_counts(n, 2 * n - 2)?;
    let radius = n as i64 - 1;
    let nodes: Vec<i64> = (-radius..=radius).collect();
    let rhs: Vec<BigInt> = (0..nodes.len())
        .map(|k| BigInt::from(walks.trace(k)))
        .collect();
    let solution = solve_vandermonde(&nodes, &rhs);

    let entries: Vec<(i64, BigUint)> = nodes
        .iter()
        .zip(solution)
        .map(|(&k, m)| {
            assert!(m.is_integer(), "non-integer multiplicity {m} at {k}");
            assert!(!m.is_negative(), "negative multiplicity {m} at {k}");
            (k, m.to_integer().to_biguint().unwrap())
        })
        .collect();
    let table = SpectrumTable::from_multiplicities(n, entries);
    assert_eq!(table.total(), factorial(n), "multiplicities must sum to n!");
    Ok(table)
}
