//! Standard Young tableaux and the content statistic of the largest label.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{check_limit, Error, Result};
use crate::partitions::{Cell, Partition};

/// Default cap on the shape size for brute-force enumeration.
pub const DEFAULT_SYT_LIMIT: usize = 10;

/// A filling of a shape with labels `1..=n`, increasing along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    // positions[i] holds the cell of label i + 1
    positions: Vec<Cell>,
}

impl StandardTableau {
    /// Builds a tableau from its rows, top row first.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut positions = vec![None; n];
        for (r, row) in rows.iter().enumerate() {
            for (c, &label) in row.iter().enumerate() {
                if label == 0 || label > n {
                    return Err(Error::InvalidArgument(format!("label {label} not in 1..={n}")));
                }
                if positions[label - 1].replace(Cell::new(r + 1, c + 1)).is_some() {
                    return Err(Error::InvalidArgument(format!("label {label} repeated")));
                }
                let left_ok = c == 0 || row[c - 1] < label;
                let up_ok = r == 0 || rows[r - 1][c] < label;
                if !left_ok || !up_ok {
                    return Err(Error::InvalidArgument(format!(
                        "label {label} at ({}, {}) breaks row/column order",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        let positions = positions.into_iter().map(Option::unwrap).collect();
        Ok(StandardTableau { shape, positions })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    /// The cell holding `label`.
    pub fn cell_of(&self, label: usize) -> Result<Cell> {
        if label == 0 || label > self.size() {
            return Err(Error::InvalidArgument(format!(
                "label {label} not in 1..={}",
                self.size()
            )));
        }
        Ok(self.positions[label - 1])
    }

    /// Content of the box holding `label`.
    pub fn content_of_label(&self, label: usize) -> Result<i64> {
        self.cell_of(label).map(|c| c.content())
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.parts().iter().map(|&p| vec![0; p]).collect();
        for (i, cell) in self.positions.iter().enumerate() {
            rows[cell.row - 1][cell.col - 1] = i + 1;
        }
        rows
    }
}

/// All standard Young tableaux of `shape`, capped at [`DEFAULT_SYT_LIMIT`] boxes.
pub fn enumerate_syt(shape: &Partition) -> Result<Vec<StandardTableau>> {
    enumerate_syt_capped(shape, DEFAULT_SYT_LIMIT)
}

/// Same as [`enumerate_syt`] with an explicit size cap.
///
/// Labels are placed in increasing order; label `i` may go into any box of
/// `shape` whose left and upper neighbours are already filled. Candidates are
/// scanned row by row, so the output order is deterministic.
pub fn enumerate_syt_capped(shape: &Partition, cap: usize) -> Result<Vec<StandardTableau>> {
    check_limit("tableau enumeration", shape.size(), cap)?;
    let mut filled = vec![0usize; shape.len()];
    let mut positions = Vec::with_capacity(shape.size());
    let mut out = Vec::new();
    grow(shape, &mut filled, &mut positions, &mut out);
    Ok(out)
}

fn grow(
    shape: &Partition,
    filled: &mut [usize],
    positions: &mut Vec<Cell>,
    out: &mut Vec<StandardTableau>,
) {
    if positions.len() == shape.size() {
        out.push(StandardTableau {
            shape: shape.clone(),
            positions: positions.clone(),
        });
        return;
    }
    for r in 0..filled.len() {
        let next_col = filled[r] + 1;
        let fits = next_col <= shape.parts()[r];
        let above_ok = r == 0 || filled[r - 1] >= next_col;
        if fits && above_ok {
            filled[r] += 1;
            positions.push(Cell::new(r + 1, next_col));
            grow(shape, filled, positions, out);
            positions.pop();
            filled[r] -= 1;
        }
    }
}

/// Number of tableaux of `shape` with the largest label at content `k`, by enumeration.
pub fn count_n_at_content_brute(shape: &Partition, k: i64) -> Result<BigUint> {
    count_n_at_content_brute_capped(shape, k, DEFAULT_SYT_LIMIT)
}

pub fn count_n_at_content_brute_capped(shape: &Partition, k: i64, cap: usize) -> Result<BigUint> {
    let n = shape.size();
    let tableaux = enumerate_syt_capped(shape, cap)?;
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let hits = tableaux
        .iter()
        .filter(|t| t.positions[n - 1].content() == k)
        .count();
    Ok(BigUint::from(hits))
}

/// Same count without enumeration: the largest label sits in a removable
/// corner, and deleting it leaves an arbitrary tableau of the smaller shape,
/// so the count is the sum of `dimension(shape minus corner)` over corners of
/// content `k`. Corner contents are distinct, so at most one term is nonzero.
pub fn count_n_at_content_fast(shape: &Partition, k: i64) -> BigUint {
    shape
        .corners()
        .into_iter()
        .filter(|c| c.content() == k)
        .map(|c| {
            shape
                .remove_corner(c)
                .expect("corner is removable")
                .dimension()
        })
        .sum()
}
