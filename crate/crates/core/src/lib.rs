//! Exact spectrum of the Cayley graph of the symmetric group generated by the
//! star transpositions `(1 i)`, `2 <= i <= n`.
//!
//! The graph's adjacency operator is left multiplication by the Jucys-Murphy
//! element `J_n = (1 n) + ... + (n-1 n)` on the group algebra, so its
//! eigenvalues are contents of the box holding `n` in standard Young tableaux.
//! [`spectrum::multiplicity_table`] evaluates that formula exactly;
//! [`cayley_oracle::oracle_multiplicity_table`] recovers the same table
//! independently from closed-walk counts on the group itself.

pub mod cayley_oracle;
pub mod cli;
mod error;
pub mod partitions;
pub mod semicircle;
pub mod spectrum;
pub mod tableaux;

pub use error::{Error, Result};
pub use partitions::{Cell, Partition};
pub use spectrum::SpectrumTable;
pub use tableaux::StandardTableau;

use num_bigint::BigUint;

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
