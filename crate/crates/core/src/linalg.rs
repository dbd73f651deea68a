//! Exact sparse linear algebra over the rationals.
//!
//! [`SparseRationalMatrix`] is the rank/kernel backbone for every cohomology
//! computation in this crate. Ranks are computed by integer-preserving
//! elimination: each row is scaled to integer entries with content removed,
//! and the pivot at every step is the active entry of smallest bit size,
//! ties broken by lowest `(row, col)`. This keeps coefficient growth under
//! control and makes the elimination order fully deterministic.
//!
//! Construction through [`SparseRationalMatrix::new`] is subject to an entry
//! cap (`rows * cols`, default [`DEFAULT_ENTRY_CAP`]): oversized shapes are
//! rejected with a resource error rather than attempted.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on `rows * cols` for freshly constructed matrices.
pub const DEFAULT_ENTRY_CAP: u64 = 50_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseRationalMatrix {
    /// A zero matrix, checked against the default entry cap.
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        Self::new_with_cap(rows, cols, DEFAULT_ENTRY_CAP)
    }

    /// A zero matrix, checked against an explicit entry cap.
    pub fn new_with_cap(rows: usize, cols: usize, cap: u64) -> Result<Self> {
        let required = rows as u128 * cols as u128;
        if required > cap as u128 {
            return Err(Error::ResourceCap {
                what: format!("{rows}x{cols} matrix"),
                required,
                cap: cap as u128,
            });
        }
        Ok(Self::raw(rows, cols))
    }

    /// Internal constructor for shapes derived from already-admitted
    /// matrices (transposes, products, submatrices).
    pub(crate) fn raw(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, data: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Self::new(rows, cols)?;
        for (r, c, v) in data {
            m.add(r, c, v);
        }
        Ok(m)
    }

    /// Dense construction from integer rows; convenient in tests.
    pub fn from_int_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::raw(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, crate::scalar::int(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Overwrites an entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Adds into an entry, keeping the no-stored-zeros invariant.
    pub fn add(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            return;
        }
        match self.entries.entry((row, col)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::raw(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    /// Sparse product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Group our entries by column so each entry of `other` is touched once.
        let mut by_col: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut out = Self::raw(self.rows, other.cols);
        for (&(j, k), b) in &other.entries {
            if let Some(col) = by_col.get(&j) {
                for &(i, a) in col {
                    out.add(i, k, a * b);
                }
            }
        }
        Ok(out)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        Eliminator::from_matrix(self).run()
    }

    /// `cols - rank`, the dimension of the right kernel.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dimension of `column-space(self) ∩ span{e_s : s ∈ selection}` inside
    /// the codomain, computed as `rank(M) + |S| - rank([M | axes])`.
    pub fn image_meet_coordinate_subspace(&self, selection: &BTreeSet<usize>) -> Result<usize> {
        for &s in selection {
            if s >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    bound: self.rows,
                    context: "image_meet_coordinate_subspace selection",
                });
            }
        }
        let mut augmented = Self::raw(self.rows, self.cols + selection.len());
        augmented.entries = self.entries.clone();
        for (k, &s) in selection.iter().enumerate() {
            augmented.entries.insert((s, self.cols + k), Scalar::one());
        }
        Ok(self.rank() + selection.len() - augmented.rank())
    }

    /// Canonical basis of the right kernel. Intended for the small dense-ish
    /// systems of the algebra layer; rank queries on large matrices should go
    /// through [`rank`](Self::rank) instead.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut dense: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            dense[r][c] = v.clone();
        }
        let pivots = rref_dense(&mut dense);
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -dense[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical (reduced row echelon) basis of the column space, each
    /// vector of length `rows`.
    pub fn column_space_basis(&self) -> Vec<Vec<Scalar>> {
        let mut dense: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); self.rows]; self.cols];
        for (&(r, c), v) in &self.entries {
            dense[c][r] = v.clone();
        }
        rref_dense(&mut dense);
        dense.retain(|row| row.iter().any(|x| !x.is_zero()));
        dense
    }
}

impl fmt::Debug for SparseRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseRationalMatrix({}x{}, {} entries)",
            self.rows,
            self.cols,
            self.entries.len()
        )
    }
}

/// In-place reduced row echelon form over the rationals; returns the pivot
/// columns in order. Deterministic: pivots are taken in column order using
/// the first available row.
#[allow(clippy::needless_range_loop)] // rows[r] and rows[next_row] alias
pub fn rref_dense(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(pr) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pr);
        let inv = rows[next_row][col].recip();
        for x in rows[next_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let delta = &factor * &rows[next_row][c];
                rows[r][c] -= delta;
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves `sum_i x_i * columns[i] = target` exactly, free coordinates pinned
/// to zero. Returns `None` when the system is inconsistent.
pub fn solve_dense(columns: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = target.len();
    let k = columns.len();
    let mut aug: Vec<Vec<Scalar>> = (0..m)
        .map(|r| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = rref_dense(&mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Scalar::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][k].clone();
    }
    Some(x)
}

/// Sparse elimination state. Rows are integer vectors with content removed;
/// `candidates` indexes every active entry as `(bit size, row, col)` so the
/// pivot rule is a single ordered-set lookup.
struct Eliminator {
    rows: Vec<Option<Vec<(u32, BigInt)>>>,
    col_rows: Vec<HashSet<u32>>,
    candidates: BTreeSet<(u64, u32, u32)>,
}

impl Eliminator {
    fn from_matrix(m: &SparseRationalMatrix) -> Self {
        let mut state = Eliminator {
            rows: vec![None; m.rows],
            col_rows: vec![HashSet::new(); m.cols],
            candidates: BTreeSet::new(),
        };
        let mut current: Vec<(u32, Scalar)> = Vec::new();
        let mut current_row = usize::MAX;
        let flush = |state: &mut Eliminator, row: usize, entries: &mut Vec<(u32, Scalar)>| {
            if entries.is_empty() {
                return;
            }
            let scaled = clear_denominators(entries);
            state.insert_row(row as u32, scaled);
            entries.clear();
        };
        for (&(r, c), v) in &m.entries {
            if r != current_row {
                if current_row != usize::MAX {
                    flush(&mut state, current_row, &mut current);
                }
                current_row = r;
            }
            current.push((c as u32, v.clone()));
        }
        if current_row != usize::MAX {
            flush(&mut state, current_row, &mut current);
        }
        state
    }

    fn insert_row(&mut self, r: u32, entries: Vec<(u32, BigInt)>) {
        for (c, v) in &entries {
            self.col_rows[*c as usize].insert(r);
            self.candidates.insert((v.bits(), r, *c));
        }
        self.rows[r as usize] = Some(entries);
    }

    fn remove_row(&mut self, r: u32) -> Vec<(u32, BigInt)> {
        let entries = self.rows[r as usize].take().expect("row already removed");
        for (c, v) in &entries {
            self.col_rows[*c as usize].remove(&r);
            self.candidates.remove(&(v.bits(), r, *c));
        }
        entries
    }

    fn run(mut self) -> usize {
        let mut rank = 0;
        while let Some(&(_, r, c)) = self.candidates.first() {
            rank += 1;
            let pivot_row = self.remove_row(r);
            let pivot_val = lookup(&pivot_row, c).expect("pivot entry missing").clone();
            let mut affected: Vec<u32> = self.col_rows[c as usize].iter().copied().collect();
            affected.sort_unstable();
            for r2 in affected {
                let row2 = self.remove_row(r2);
                let a = lookup(&row2, c).expect("column index out of sync").clone();
                let combined = combine(&pivot_val, &row2, &a, &pivot_row, c);
                if !combined.is_empty() {
                    self.insert_row(r2, combined);
                }
            }
        }
        rank
    }
}

fn lookup(row: &[(u32, BigInt)], col: u32) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| &row[i].1)
}

/// `p * row2 - a * pivot`, skipping `skip_col` (which cancels exactly),
/// then divided by the content gcd.
fn combine(
    p: &BigInt,
    row2: &[(u32, BigInt)],
    a: &BigInt,
    pivot: &[(u32, BigInt)],
    skip_col: u32,
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(row2.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row2.len() || j < pivot.len() {
        let ci = row2.get(i).map(|e| e.0);
        let cj = pivot.get(j).map(|e| e.0);
        match (ci, cj) {
            (Some(ci), Some(cj)) if ci == cj => {
                if ci != skip_col {
                    let v = p * &row2[i].1 - a * &pivot[j].1;
                    if !v.is_zero() {
                        out.push((ci, v));
                    }
                }
                i += 1;
                j += 1;
            }
            (Some(ci), cj) if cj.is_none_or(|cj| ci < cj) => {
                if ci != skip_col {
                    out.push((ci, p * &row2[i].1));
                }
                i += 1;
            }
            (_, Some(cj)) => {
                if cj != skip_col {
                    out.push((cj, -(a * &pivot[j].1)));
                }
                j += 1;
            }
            _ => unreachable!(),
        }
    }
    remove_content(&mut out);
    out
}

fn clear_denominators(entries: &[(u32, Scalar)]) -> Vec<(u32, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, v) in entries {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: Vec<(u32, BigInt)> = entries
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(entries: &mut [(u32, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in entries.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_one() || g.is_zero() {
        return;
    }
    for (_, v) in entries.iter_mut() {
        *v = &*v / &g;
    }
}
