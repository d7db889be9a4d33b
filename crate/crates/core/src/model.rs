//! Counting instances: margin offsets, entry masks and the dilation parameter.
//!
//! A [`TableProblem`] describes the family of `n x n` nonnegative integer
//! matrices whose row sums are `r + sr[i]` and column sums are `r + sc[j]`,
//! where some cells may be pinned to a value beforehand. The soccer instance
//! ("every team scores `r` and concedes `r`") is [`TableProblem::zero_diagonal`].

use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};

/// One cell of an [`EntryMask`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    /// The entry is pinned to this value.
    Fixed(u64),
    /// Wildcard: the entry is unconstrained.
    Free,
}

impl Cell {
    pub fn is_free(self) -> bool {
        matches!(self, Cell::Free)
    }
}

/// Square grid of [`Cell`]s, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntryMask {
    n: usize,
    cells: Vec<Cell>,
}

impl EntryMask {
    /// Builds a mask from nested rows; fails unless the grid is exactly `n x n`.
    pub fn from_rows(rows: Vec<Vec<Cell>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("mask must have at least one row".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "mask row {i} has {} cells, expected {n}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        Ok(EntryMask { n, cells })
    }

    pub fn all_free(n: usize) -> Self {
        EntryMask {
            n,
            cells: vec![Cell::Free; n * n],
        }
    }

    /// `Fixed(0)` on the diagonal, `Free` elsewhere.
    pub fn zero_diagonal(n: usize) -> Self {
        let mut mask = Self::all_free(n);
        for i in 0..n {
            mask.set(i, i, Cell::Fixed(0));
        }
        mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, cell: Cell) {
        self.cells[row * self.n + col] = cell;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cell]> {
        self.cells.chunks(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(self.get(j, i));
            }
        }
        EntryMask { n, cells }
    }

    /// Applies `perm` to rows and columns simultaneously: the new cell at
    /// `(perm[i], perm[j])` is the old cell at `(i, j)`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }

    pub fn fixed_total(&self) -> u64 {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Fixed(v) => *v,
                Cell::Free => 0,
            })
            .sum()
    }
}

/// Row and column offsets `Sr`, `Sc`; concrete margins are `r + offset`.
///
/// Offsets may be negative. Nonnegativity is only required of the concrete
/// margins at a given `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarginOffsets {
    pub sr: Vec<i64>,
    pub sc: Vec<i64>,
}

impl MarginOffsets {
    pub fn new(sr: Vec<i64>, sc: Vec<i64>) -> Self {
        MarginOffsets { sr, sc }
    }

    pub fn zero(n: usize) -> Self {
        MarginOffsets {
            sr: vec![0; n],
            sc: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.sr.len()
    }
}

/// A counting instance at a concrete dilation `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableProblem {
    pub offsets: MarginOffsets,
    pub mask: EntryMask,
    pub r: i64,
}

impl TableProblem {
    pub fn new(offsets: MarginOffsets, mask: EntryMask, r: i64) -> Self {
        TableProblem { offsets, mask, r }
    }

    /// The soccer instance: all margins `r`, zero diagonal.
    pub fn zero_diagonal(n: usize, r: i64) -> Self {
        TableProblem {
            offsets: MarginOffsets::zero(n),
            mask: EntryMask::zero_diagonal(n),
            r,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.n()
    }

    pub fn with_r(&self, r: i64) -> Self {
        TableProblem { r, ..self.clone() }
    }
}

/// Witness that a [`TableProblem`] passed [`validate_problem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedProblem {
    problem: TableProblem,
    row_targets: Vec<u64>,
    col_targets: Vec<u64>,
}

impl ValidatedProblem {
    pub fn problem(&self) -> &TableProblem {
        &self.problem
    }

    pub fn row_targets(&self) -> &[u64] {
        &self.row_targets
    }

    pub fn col_targets(&self) -> &[u64] {
        &self.col_targets
    }
}

/// Margins after pinned entries have been subtracted.
///
/// `mask` contains only `Fixed(0)` and `Free` cells; `pinned` keeps the
/// original fixed values (row-major) so that enumerated matrices can be
/// reported with their true entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteMargins {
    pub row_targets: Vec<u64>,
    pub col_targets: Vec<u64>,
    pub mask: EntryMask,
    pub pinned: Vec<u64>,
}

impl ConcreteMargins {
    /// Builds reduced margins directly from concrete targets and a mask.
    pub fn from_targets(row_targets: Vec<u64>, col_targets: Vec<u64>, mask: EntryMask) -> Result<Self> {
        let n = mask.n();
        if row_targets.len() != n || col_targets.len() != n {
            return Err(Error::Shape(format!(
                "targets have lengths {}/{}, mask is {n}x{n}",
                row_targets.len(),
                col_targets.len()
            )));
        }
        let rows: u64 = row_targets.iter().sum();
        let cols: u64 = col_targets.iter().sum();
        if rows != cols {
            return Err(Error::MarginMismatch {
                rows: rows as i64,
                cols: cols as i64,
            });
        }
        reduce(row_targets, col_targets, &mask)
    }

    pub fn n(&self) -> usize {
        self.mask.n()
    }

    pub fn total(&self) -> u64 {
        self.row_targets.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut pinned = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                pinned[j * n + i] = self.pinned[i * n + j];
            }
        }
        ConcreteMargins {
            row_targets: self.col_targets.clone(),
            col_targets: self.row_targets.clone(),
            mask: self.mask.transpose(),
            pinned,
        }
    }
}

/// Checks offsets, mask shape and concrete margins at `p.r`.
pub fn validate_problem(p: &TableProblem) -> Result<ValidatedProblem> {
    let n = p.offsets.sr.len();
    if n == 0 {
        return Err(Error::Shape("n must be at least 1".into()));
    }
    if p.offsets.sc.len() != n {
        return Err(Error::Shape(format!(
            "row offsets have length {n}, column offsets {}",
            p.offsets.sc.len()
        )));
    }
    if p.mask.n() != n {
        return Err(Error::Shape(format!("mask is {0}x{0}, expected {n}x{n}", p.mask.n())));
    }
    let rows: i64 = p.offsets.sr.iter().sum();
    let cols: i64 = p.offsets.sc.iter().sum();
    if rows != cols {
        return Err(Error::MarginMismatch { rows, cols });
    }
    let concrete = |axis: Axis, offsets: &[i64]| -> Result<Vec<u64>> {
        offsets
            .iter()
            .enumerate()
            .map(|(index, &s)| {
                let value = p.r + s;
                u64::try_from(value).map_err(|_| Error::NegativeMargin {
                    axis,
                    index,
                    value,
                    r: p.r,
                })
            })
            .collect()
    };
    let row_targets = concrete(Axis::Row, &p.offsets.sr)?;
    let col_targets = concrete(Axis::Column, &p.offsets.sc)?;
    Ok(ValidatedProblem {
        problem: p.clone(),
        row_targets,
        col_targets,
    })
}

/// Subtracts every pinned entry from its row and column targets.
pub fn reduce_fixed(p: &ValidatedProblem) -> Result<ConcreteMargins> {
    reduce(p.row_targets.clone(), p.col_targets.clone(), &p.problem.mask)
}

fn reduce(mut rows: Vec<u64>, mut cols: Vec<u64>, mask: &EntryMask) -> Result<ConcreteMargins> {
    let n = mask.n();
    let mut reduced = mask.clone();
    let mut pinned = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            if let Cell::Fixed(v) = mask.get(i, j) {
                rows[i] = rows[i].checked_sub(v).ok_or(Error::InfeasibleFixed {
                    row: i,
                    col: j,
                    value: v,
                    axis: Axis::Row,
                })?;
                cols[j] = cols[j].checked_sub(v).ok_or(Error::InfeasibleFixed {
                    row: i,
                    col: j,
                    value: v,
                    axis: Axis::Column,
                })?;
                pinned[i * n + j] = v;
                reduced.set(i, j, Cell::Fixed(0));
            }
        }
    }
    Ok(ConcreteMargins {
        row_targets: rows,
        col_targets: cols,
        mask: reduced,
        pinned,
    })
}

/// Swaps row and column offsets and transposes the mask.
pub fn transpose_problem(p: &TableProblem) -> TableProblem {
    TableProblem {
        offsets: MarginOffsets {
            sr: p.offsets.sc.clone(),
            sc: p.offsets.sr.clone(),
        },
        mask: p.mask.transpose(),
        r: p.r,
    }
}
