//! Integer partitions and Young-diagram combinatorics.
//!
//! Diagrams use English convention: row 1 is the top (longest) row and
//! content is `col - row`. Under this convention the one-row shape `(n)`
//! places `n` at content `n - 1`.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{check_limit, Error, Result};
use crate::factorial;

/// Largest `n` accepted by [`enumerate_partitions`] (p(50) = 204226).
pub const MAX_PARTITION_N: usize = 50;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl Partition {
    /// Validates and wraps `parts`. Parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partitioned integer, i.e. the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Length of row `row` (1-based), zero past the last row.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// All boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r + 1, c)))
    }

    /// Transposed diagram: part `j` is the height of column `j`.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|col| self.parts.iter().take_while(|&&p| p >= col).count())
            .collect();
        Partition { parts }
    }

    /// Removable corners, ordered by increasing row. Contents are strictly
    /// decreasing along this order.
    pub fn corners(&self) -> Vec<Cell> {
        let rows = self.len();
        (1..=rows)
            .filter(|&r| r == rows || self.parts[r - 1] > self.parts[r])
            .map(|r| Cell::new(r, self.parts[r - 1]))
            .collect()
    }

    pub fn is_corner(&self, cell: Cell) -> bool {
        self.contains(cell)
            && cell.col == self.row_len(cell.row)
            && self.row_len(cell.row + 1) < cell.col
    }

    pub fn remove_corner(&self, cell: Cell) -> Result<Partition> {
        if !self.is_corner(cell) {
            return Err(Error::InvalidArgument(format!(
                "({}, {}) is not a removable corner of {self}",
                cell.row, cell.col
            )));
        }
        let mut parts = self.parts.clone();
        parts[cell.row - 1] -= 1;
        if parts[cell.row - 1] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Arm + leg + 1.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains(cell) {
            return Err(Error::InvalidArgument(format!(
                "({}, {}) lies outside {self}",
                cell.row, cell.col
            )));
        }
        Ok(self.hook_unchecked(cell))
    }

    fn hook_unchecked(&self, cell: Cell) -> usize {
        let arm = self.parts[cell.row - 1] - cell.col;
        let leg = self.parts[cell.row..]
            .iter()
            .take_while(|&&p| p >= cell.col)
            .count();
        arm + leg + 1
    }

    /// Number of standard Young tableaux of this shape, by the hook-length formula.
    pub fn dimension(&self) -> BigUint {
        let hooks = self
            .cells()
            .fold(BigUint::from(1u32), |acc, c| acc * self.hook_unchecked(c));
        let total = factorial(self.size());
        debug_assert!((&total % &hooks) == BigUint::from(0u32));
        total / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Every partition of `n`, in reverse-lexicographic order:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)` for `n = 4`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    check_limit("partition enumeration", n, MAX_PARTITION_N)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}
