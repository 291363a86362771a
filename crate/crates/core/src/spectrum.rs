//! Eigenvalue multiplicities of the star-transposition Cayley graph.
//!
//! `mul(k) = sum over shapes λ ⊢ n of f_λ · I_λ(k)`, where `I_λ(k)` counts
//! tableaux of shape λ with `n` in a box of content `k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{check_limit, Error, Result};
use crate::partitions::{enumerate_partitions, Partition, MAX_PARTITION_N};
use crate::{binomial, factorial};

/// Largest `n` accepted by [`multiplicity_table`].
pub const MAX_SPECTRUM_N: usize = MAX_PARTITION_N;

/// Multiplicity of each integer eigenvalue. Absent keys mean zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    n: usize,
    mul: BTreeMap<i64, BigUint>,
}

impl SpectrumTable {
    /// Builds a table, dropping zero entries.
    pub fn from_multiplicities(n: usize, entries: impl IntoIterator<Item = (i64, BigUint)>) -> Self {
        let mut mul = BTreeMap::new();
        for (k, m) in entries {
            if !m.is_zero() {
                *mul.entry(k).or_insert_with(BigUint::zero) += m;
            }
        }
        SpectrumTable { n, mul }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest possible eigenvalue, `n - 1`.
    pub fn radius(&self) -> i64 {
        self.n as i64 - 1
    }

    pub fn get(&self, k: i64) -> BigUint {
        self.mul.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero entries in ascending eigenvalue order.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.mul.iter().map(|(&k, m)| (k, m))
    }

    /// Every eigenvalue in `[-(n-1), n-1]`, zeros included.
    pub fn full_range(&self) -> Vec<(i64, BigUint)> {
        (-self.radius()..=self.radius()).map(|k| (k, self.get(k))).collect()
    }

    pub fn support(&self) -> BTreeSet<i64> {
        self.mul.keys().copied().collect()
    }

    pub fn total(&self) -> BigUint {
        self.mul.values().sum()
    }

    /// `sum_k mul(k) · k^power`, the trace of `J_n^power`.
    pub fn power_sum(&self, power: u32) -> BigInt {
        self.mul
            .iter()
            .map(|(&k, m)| BigInt::from(k).pow(power) * BigInt::from(m.clone()))
            .sum()
    }
}

/// Exact multiplicity table of `G_n`.
pub fn multiplicity_table(n: usize) -> Result<SpectrumTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_limit("multiplicity table", n, MAX_SPECTRUM_N)?;
    let smaller: HashMap<Partition, BigUint> = enumerate_partitions(n - 1)?
        .into_iter()
        .map(|mu| {
            let d = mu.dimension();
            (mu, d)
        })
        .collect();

    let mut mul: BTreeMap<i64, BigUint> = BTreeMap::new();
    for lambda in enumerate_partitions(n)? {
        let f = lambda.dimension();
        for corner in lambda.corners() {
            let rest = lambda.remove_corner(corner)?;
            let count = &smaller[&rest];
            *mul.entry(corner.content()).or_insert_with(BigUint::zero) += &f * count;
        }
    }
    Ok(SpectrumTable::from_multiplicities(n, mul))
}

/// Set of eigenvalues with nonzero multiplicity.
pub fn support(n: usize) -> Result<BTreeSet<i64>> {
    multiplicity_table(n).map(|t| t.support())
}

/// Lower bound on `mul(l)` and `mul(-l)` from hook shapes:
/// `C(n-2, l-1) · C(n-1, l)`.
pub fn hook_bound(n: usize, l: usize) -> Result<BigUint> {
    if l == 0 || l >= n {
        return Err(Error::InvalidArgument(format!(
            "l = {l} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(binomial(n - 2, l - 1) * binomial(n - 1, l))
}

/// `n! · (n-1)(2n-3)`, the closed form of `sum_k mul(k) k^4`.
pub fn fourth_power_sum_closed_form(n: usize) -> BigInt {
    let n_i = n as i64;
    BigInt::from(factorial(n)) * BigInt::from((n_i - 1) * (2 * n_i - 3))
}
