//! Exact counting and enumeration of nonnegative integer matrices with
//! prescribed margins and a mask of fixed zeros.
//!
//! [`count_tables`] fills the matrix one row at a time and memoizes on the
//! vector of remaining column capacities, since every completion of rows
//! `k..n` depends only on that vector. Counts are accumulated in `u128` and the
//! whole computation is redone with big integers if that ever overflows.
//!
//! [`count_bruteforce`] is a deliberately naive oracle: plain nested loops over
//! the free cells with running sums, no memoization, no forced cells.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{Cell, ConcreteMargins};

/// An exact, arbitrary-precision, nonnegative count.
///
/// Serialized as a decimal string so that no consumer loses precision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CountValue(pub BigUint);

impl CountValue {
    pub fn zero() -> Self {
        CountValue(BigUint::zero())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for CountValue {
    fn from(v: u64) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl From<u128> for CountValue {
    fn from(v: u128) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl From<BigUint> for CountValue {
    fn from(v: BigUint) -> Self {
        CountValue(v)
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CountValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BigUint>()
            .map(CountValue)
            .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
    }
}

impl Serialize for CountValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for CountValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Budgets for the counting engine. Exceeding one raises
/// [`Error::ResourceLimit`]; results are never silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of memoized states in one [`count_tables`] call.
    pub max_memo_entries: u64,
    /// Maximum number of matrices one [`enumerate_tables`] stream may yield.
    pub max_yields: u64,
    /// Maximum number of search nodes [`count_bruteforce`] may visit.
    pub max_bruteforce_nodes: u64,
}

impl Limits {
    pub const DEFAULT_MAX_MEMO_ENTRIES: u64 = 20_000_000;
    pub const DEFAULT_MAX_YIELDS: u64 = 10_000_000;
    pub const DEFAULT_MAX_BRUTEFORCE_NODES: u64 = 200_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_memo_entries: Self::DEFAULT_MAX_MEMO_ENTRIES,
            max_yields: Self::DEFAULT_MAX_YIELDS,
            max_bruteforce_nodes: Self::DEFAULT_MAX_BRUTEFORCE_NODES,
        }
    }
}

/// A concrete solution matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl TableMatrix {
    pub fn new(n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be n x n");
        TableMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect()
    }
}

impl fmt::Display for TableMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

trait Accumulator: Clone {
    fn nothing() -> Self;
    fn unit() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn into_count(self) -> CountValue;
}

impl Accumulator for u128 {
    fn nothing() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn into_count(self) -> CountValue {
        CountValue::from(self)
    }
}

impl Accumulator for BigUint {
    fn nothing() -> Self {
        BigUint::from(0u8)
    }
    fn unit() -> Self {
        BigUint::from(1u8)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn into_count(self) -> CountValue {
        CountValue(self)
    }
}

enum Abort {
    Overflow,
    Fail(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Fail(e)
    }
}

struct RowDp<'a, T> {
    m: &'a ConcreteMargins,
    free_cols: Vec<Vec<usize>>,
    // Per row: columns grouped by their mask pattern over the remaining rows.
    // Caps within a group are interchangeable, so keys sort them.
    col_groups: Vec<Vec<Vec<usize>>>,
    memo: Vec<HashMap<Vec<u64>, T>>,
    entries: u64,
    limit: u64,
}

impl<T: Accumulator> RowDp<'_, T> {
    fn rows_from(&mut self, row: usize, caps: &mut Vec<u64>) -> std::result::Result<T, Abort> {
        let n = self.m.n();
        if row + 1 == n {
            // Last row is forced: it takes exactly the remaining capacities.
            let ok = (0..n).all(|j| caps[j] == 0 || self.m.mask.get(row, j).is_free());
            return Ok(if ok { T::unit() } else { T::nothing() });
        }
        let key = self.key(row, caps);
        if let Some(v) = self.memo[row].get(&key) {
            return Ok(v.clone());
        }
        let target = self.m.row_targets[row];
        let total = self.fill(row, 0, target, caps)?;
        self.entries += 1;
        if self.entries > self.limit {
            return Err(Abort::Fail(Error::ResourceLimit {
                what: "memo entries",
                limit: self.limit,
            }));
        }
        self.memo[row].insert(key, total.clone());
        Ok(total)
    }

    fn key(&self, row: usize, caps: &[u64]) -> Vec<u64> {
        let mut key = Vec::with_capacity(caps.len());
        for group in &self.col_groups[row] {
            let start = key.len();
            key.extend(group.iter().map(|&j| caps[j]));
            key[start..].sort_unstable();
        }
        key
    }

    fn fill(&mut self, row: usize, pos: usize, remaining: u64, caps: &mut Vec<u64>) -> std::result::Result<T, Abort> {
        let count = self.free_cols[row].len();
        if pos == count {
            return if remaining == 0 {
                self.rows_from(row + 1, caps)
            } else {
                Ok(T::nothing())
            };
        }
        let col = self.free_cols[row][pos];
        if pos + 1 == count {
            if remaining > caps[col] {
                return Ok(T::nothing());
            }
            caps[col] -= remaining;
            let v = self.rows_from(row + 1, caps);
            caps[col] += remaining;
            return v;
        }
        let rest: u64 = self.free_cols[row][pos + 1..].iter().map(|&c| caps[c]).sum();
        let lo = remaining.saturating_sub(rest);
        let hi = remaining.min(caps[col]);
        let mut acc = T::nothing();
        for v in lo..=hi {
            caps[col] -= v;
            let sub = self.fill(row, pos + 1, remaining - v, caps);
            caps[col] += v;
            acc = acc.add(&sub?).ok_or(Abort::Overflow)?;
        }
        Ok(acc)
    }
}

fn run_dp<T: Accumulator>(m: &ConcreteMargins, limits: &Limits) -> std::result::Result<T, Abort> {
    let n = m.n();
    let free_cols = (0..n)
        .map(|i| (0..n).filter(|&j| m.mask.get(i, j).is_free()).collect())
        .collect();
    let col_groups = (0..n)
        .map(|row| {
            let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
            for j in 0..n {
                let pattern = (row..n).map(|i| m.mask.get(i, j).is_free()).collect();
                groups.entry(pattern).or_default().push(j);
            }
            groups.into_values().collect()
        })
        .collect();
    let mut dp = RowDp {
        m,
        free_cols,
        col_groups,
        memo: (0..n).map(|_| HashMap::new()).collect(),
        entries: 0,
        limit: limits.max_memo_entries,
    };
    let mut caps = m.col_targets.clone();
    dp.rows_from(0, &mut caps)
}

/// Exact number of matrices satisfying `m`.
pub fn count_tables(m: &ConcreteMargins, limits: &Limits) -> Result<CountValue> {
    if m.row_targets.iter().sum::<u64>() != m.col_targets.iter().sum::<u64>() {
        return Ok(CountValue::zero());
    }
    match run_dp::<u128>(m, limits) {
        Ok(v) => Ok(v.into_count()),
        Err(Abort::Fail(e)) => Err(e),
        Err(Abort::Overflow) => match run_dp::<BigUint>(m, limits) {
            Ok(v) => Ok(v.into_count()),
            Err(Abort::Fail(e)) => Err(e),
            Err(Abort::Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

/// Brute-force oracle: nested enumeration of free cells with running-sum
/// bounds only. Visiting more than `limits.max_bruteforce_nodes` nodes raises
/// [`Error::ResourceLimit`].
pub fn count_bruteforce(m: &ConcreteMargins, limits: &Limits) -> Result<CountValue> {
    let n = m.n();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.mask.get(i, j) == Cell::Free)
        .collect();
    let mut rows = m.row_targets.clone();
    let mut cols = m.col_targets.clone();
    let mut nodes = 0u64;

    fn walk(
        k: usize,
        cells: &[(usize, usize)],
        rows: &mut [u64],
        cols: &mut [u64],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<u64> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::ResourceLimit {
                what: "brute-force nodes",
                limit: budget,
            });
        }
        if k == cells.len() {
            let done = rows.iter().all(|&x| x == 0) && cols.iter().all(|&x| x == 0);
            return Ok(u64::from(done));
        }
        let (i, j) = cells[k];
        let mut total = 0;
        for v in 0..=rows[i].min(cols[j]) {
            rows[i] -= v;
            cols[j] -= v;
            let sub = walk(k + 1, cells, rows, cols, nodes, budget);
            rows[i] += v;
            cols[j] += v;
            total += sub?;
        }
        Ok(total)
    }

    let c = walk(0, &cells, &mut rows, &mut cols, &mut nodes, limits.max_bruteforce_nodes)?;
    Ok(CountValue::from(c))
}

/// Lazily enumerates every solution of `m` in row-major lexicographic order
/// (smallest entry first), stopping after `limit` matrices when given.
pub fn enumerate_tables(m: &ConcreteMargins, limit: Option<u64>, limits: &Limits) -> TableStream {
    TableStream::new(m.clone(), limit, limits.max_yields)
}

/// Iterator returned by [`enumerate_tables`].
///
/// Yields `Err(ResourceLimit)` once (and then stops) if the stream would
/// exceed the yield budget.
pub struct TableStream {
    m: ConcreteMargins,
    cells: Vec<(usize, usize)>,
    // For each free cell: later free cells in the same row / same column.
    row_rest: Vec<Vec<usize>>,
    col_rest: Vec<Vec<usize>>,
    vals: Vec<u64>,
    assigned: Vec<bool>,
    rows: Vec<u64>,
    cols: Vec<u64>,
    depth: usize,
    state: StreamState,
    yielded: u64,
    limit: Option<u64>,
    max_yields: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    AfterYield,
    Done,
}

impl TableStream {
    fn new(m: ConcreteMargins, limit: Option<u64>, max_yields: u64) -> Self {
        let n = m.n();
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| m.mask.get(i, j).is_free())
            .collect();
        let row_rest = (0..cells.len())
            .map(|k| (k + 1..cells.len()).filter(|&q| cells[q].0 == cells[k].0).collect())
            .collect();
        let col_rest = (0..cells.len())
            .map(|k| (k + 1..cells.len()).filter(|&q| cells[q].1 == cells[k].1).collect())
            .collect();
        let len = cells.len();
        TableStream {
            rows: m.row_targets.clone(),
            cols: m.col_targets.clone(),
            m,
            cells,
            row_rest,
            col_rest,
            vals: vec![0; len],
            assigned: vec![false; len],
            depth: 0,
            state: StreamState::Fresh,
            yielded: 0,
            limit,
            max_yields,
        }
    }

    fn bounds(&self, k: usize) -> (u64, u64) {
        let (i, j) = self.cells[k];
        let hi = self.rows[i].min(self.cols[j]);
        let row_room: u64 = self.row_rest[k].iter().map(|&q| self.cols[self.cells[q].1]).sum();
        let col_room: u64 = self.col_rest[k].iter().map(|&q| self.rows[self.cells[q].0]).sum();
        let lo = self.rows[i]
            .saturating_sub(row_room)
            .max(self.cols[j].saturating_sub(col_room));
        (lo, hi)
    }

    fn matrix(&self) -> TableMatrix {
        let n = self.m.n();
        let mut entries = self.m.pinned.clone();
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            entries[i * n + j] += self.vals[k];
        }
        TableMatrix::new(n, entries)
    }

    fn emit(&mut self) -> Option<Result<TableMatrix>> {
        if self.yielded >= self.max_yields {
            self.state = StreamState::Done;
            return Some(Err(Error::ResourceLimit {
                what: "enumerated tables",
                limit: self.max_yields,
            }));
        }
        self.yielded += 1;
        self.state = StreamState::AfterYield;
        Some(Ok(self.matrix()))
    }

    fn advance(&mut self) -> Option<Result<TableMatrix>> {
        let len = self.cells.len();
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => {
                // Rows or columns with demand but no free cell can never be met.
                if self.rows.iter().sum::<u64>() != self.cols.iter().sum::<u64>() {
                    self.state = StreamState::Done;
                    return None;
                }
                if len == 0 {
                    return if self.rows.iter().all(|&x| x == 0) {
                        let out = self.emit();
                        self.state = StreamState::Done;
                        out
                    } else {
                        self.state = StreamState::Done;
                        None
                    };
                }
                self.state = StreamState::Running;
                self.depth = 0;
            }
            StreamState::AfterYield => {
                self.state = StreamState::Running;
                self.depth = len - 1;
            }
            StreamState::Running => {}
        }
        loop {
            let k = self.depth;
            let (i, j) = self.cells[k];
            let candidate = if self.assigned[k] {
                self.rows[i] += self.vals[k];
                self.cols[j] += self.vals[k];
                self.assigned[k] = false;
                self.vals[k] + 1
            } else {
                0
            };
            let (lo, hi) = self.bounds(k);
            let v = candidate.max(lo);
            if v <= hi {
                self.vals[k] = v;
                self.assigned[k] = true;
                self.rows[i] -= v;
                self.cols[j] -= v;
                if k + 1 == len {
                    if self.rows.iter().all(|&x| x == 0) && self.cols.iter().all(|&x| x == 0) {
                        return self.emit();
                    }
                    continue;
                }
                self.depth += 1;
            } else {
                if k == 0 {
                    self.state = StreamState::Done;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

impl Iterator for TableStream {
    type Item = Result<TableMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.limit.is_some_and(|l| self.yielded >= l) {
            return None;
        }
        self.advance()
    }
}

/// Counts every instance of `p` (validated) after reducing fixed entries;
/// a pinned value larger than its margin yields zero rather than an error.
pub fn count_problem(p: &crate::model::ValidatedProblem, limits: &Limits) -> Result<CountValue> {
    match crate::model::reduce_fixed(p) {
        Ok(m) => count_tables(&m, limits),
        Err(Error::InfeasibleFixed { .. }) => Ok(CountValue::zero()),
        Err(e) => Err(e),
    }
}
