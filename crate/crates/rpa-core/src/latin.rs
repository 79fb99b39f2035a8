//! Latin-square completion: availability matrices and their permanents,
//! free-choice bounds for extending latin rectangles, matching-based row
//! completion with König certificates, and the seed-then-complete pipeline
//! producing a type-1,2 latin array of every order.

use crate::construct::{odd_staircase, repair_in_place, ConstructError, ReflectionMap, StageFiller};
use crate::fixtures;
use crate::matching::{koenig_zero_block, max_bipartite_matching};
use crate::model::{Corner, Order, PermArray};
use crate::staircase::{Staircase, EMPTY};
use crate::verify::{verify_latin, verify_rpa};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

/// Exact extension counting is guarded to this order; the permanent is
/// exponential and `14! < 2^64`, so `u128` arithmetic stays exact.
pub const COUNT_GUARD: usize = 14;

#[derive(Debug, Error)]
pub enum LatinError {
    #[error("rows must be permutations of 1..=n with no repeat in any column")]
    NotLatin,
    #[error("free-choice index k={k} out of range 0..={max}")]
    FreeChoiceRange { k: usize, max: usize },
    #[error("prefill is inconsistent: {0}")]
    InconsistentPrefill(String),
    #[error("order {n} exceeds the exact-count guard {cap}")]
    CountGuard { n: usize, cap: usize },
    #[error("row {row} admits no completion; zero block: symbols {symbols:?} x columns {columns:?}")]
    NoMatching { row: usize, symbols: Vec<usize>, columns: Vec<usize> },
    #[error("partial square is inconsistent at row {row}")]
    BadPartial { row: usize },
    #[error("seed completion search exhausted for order {n}")]
    SeedSearch { n: usize },
    #[error("completed square failed verification")]
    FinalCheck,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Free choices when extending a `k x n` latin rectangle by one row: the
/// largest `l < n` such that every placement of `l` consistent cells in row
/// `k+1` can be completed.
pub fn free_choice(k: usize, n: usize) -> Result<usize, LatinError> {
    if n == 0 || k >= n {
        return Err(LatinError::FreeChoiceRange { k, max: n.saturating_sub(1) });
    }
    if k == 0 || k == n - 1 {
        return Ok(n - 1);
    }
    Ok(if 2 * k < n { n - 2 * k } else { 1 })
}

/// A `k x n` latin rectangle: every row a permutation of `1..=n`, no symbol
/// repeated within a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinRect {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl LatinRect {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let n = rows.first().map(|r| r.len()).ok_or(LatinError::NotLatin)?;
        let rect = LatinRect { n, rows };
        rect.validate()?;
        Ok(rect)
    }

    /// The empty rectangle (`k = 0`) over `n` symbols.
    pub fn empty(n: usize) -> Self {
        LatinRect { n, rows: Vec::new() }
    }

    fn validate(&self) -> Result<(), LatinError> {
        let n = self.n;
        for row in &self.rows {
            if row.len() != n {
                return Err(LatinError::NotLatin);
            }
            let mut seen = vec![false; n + 1];
            for &s in row {
                if s == 0 || s > n || seen[s] {
                    return Err(LatinError::NotLatin);
                }
                seen[s] = true;
            }
        }
        for col in 1..=n {
            let mut seen = vec![false; n + 1];
            for row in &self.rows {
                let s = row[col - 1];
                if seen[s] {
                    return Err(LatinError::NotLatin);
                }
                seen[s] = true;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn column_contains(&self, col: usize, sym: usize) -> bool {
        self.rows.iter().any(|r| r[col - 1] == sym)
    }
}

/// The 0/1 availability matrix `M`: entry `(i, j)` is 1 iff symbol `i` does
/// not appear in column `j` of the rectangle. For a `k x n` latin rectangle
/// every row and column sums to `n - k`.
#[derive(Debug, Clone)]
pub struct AvailabilityMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AvailabilityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based symbol and column.
    pub fn entry(&self, sym: usize, col: usize) -> bool {
        self.bits[(sym - 1) * self.n + (col - 1)]
    }

    pub fn row_sum(&self, sym: usize) -> usize {
        (1..=self.n).filter(|&c| self.entry(sym, c)).count()
    }

    pub fn col_sum(&self, col: usize) -> usize {
        (1..=self.n).filter(|&s| self.entry(s, col)).count()
    }
}

pub fn availability(rect: &LatinRect) -> AvailabilityMatrix {
    let n = rect.n();
    let mut bits = vec![true; n * n];
    for row in rect.rows() {
        for (c, &s) in row.iter().enumerate() {
            bits[(s - 1) * n + c] = false;
        }
    }
    AvailabilityMatrix { n, bits }
}

/// Extending row `k+1` of a latin rectangle with `l` prefilled cells: the
/// problem keeps the rectangle, the prefill, and exposes the reduced matrix
/// `M'` obtained by deleting the prefilled symbols' rows and columns.
#[derive(Debug, Clone)]
pub struct RowFillProblem {
    rect: LatinRect,
    prefill: Vec<(usize, usize)>,
}

impl RowFillProblem {
    /// `prefill` lists `(column, symbol)` pairs for row `k+1`.
    pub fn new(rect: LatinRect, prefill: Vec<(usize, usize)>) -> Result<Self, LatinError> {
        let n = rect.n();
        let mut col_used = vec![false; n + 1];
        let mut sym_used = vec![false; n + 1];
        for &(col, sym) in &prefill {
            if col == 0 || col > n || sym == 0 || sym > n {
                return Err(LatinError::InconsistentPrefill(format!(
                    "cell (column {col}, symbol {sym}) out of range"
                )));
            }
            if col_used[col] || sym_used[sym] {
                return Err(LatinError::InconsistentPrefill(
                    "repeated prefill column or symbol".into(),
                ));
            }
            if rect.column_contains(col, sym) {
                return Err(LatinError::InconsistentPrefill(format!(
                    "symbol {sym} already appears in column {col}"
                )));
            }
            col_used[col] = true;
            sym_used[sym] = true;
        }
        Ok(RowFillProblem { rect, prefill })
    }

    pub fn rect(&self) -> &LatinRect {
        &self.rect
    }

    pub fn prefill(&self) -> &[(usize, usize)] {
        &self.prefill
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let n = self.rect.n();
        (1..=n).filter(|c| !self.prefill.iter().any(|&(pc, _)| pc == *c)).collect()
    }

    pub fn unused_symbols(&self) -> Vec<usize> {
        let n = self.rect.n();
        (1..=n).filter(|s| !self.prefill.iter().any(|&(_, ps)| ps == *s)).collect()
    }

    /// Reduced matrix `M'` as bit rows over (unused symbols) x (free columns).
    pub fn reduced_matrix(&self) -> Vec<Vec<bool>> {
        let avail = availability(&self.rect);
        let cols = self.free_columns();
        self.unused_symbols()
            .iter()
            .map(|&s| cols.iter().map(|&c| avail.entry(s, c)).collect())
            .collect()
    }
}

/// Can the row be completed? Decided by maximum bipartite matching between
/// free columns and unused symbols; equivalently `per M' > 0`.
pub fn completable(problem: &RowFillProblem) -> bool {
    let cols = problem.free_columns();
    let syms = problem.unused_symbols();
    let avail = availability(problem.rect());
    let adj: Vec<Vec<usize>> = cols
        .iter()
        .map(|&c| {
            syms.iter()
                .enumerate()
                .filter(|(_, &s)| avail.entry(s, c))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    max_bipartite_matching(&adj, syms.len()).size == cols.len()
}

/// Exact number of completions of the row: the permanent of `M'`, computed
/// by Ryser inclusion-exclusion with Gray-code updates.
pub fn count_extensions(problem: &RowFillProblem) -> Result<u128, LatinError> {
    let n = problem.rect().n();
    if n > COUNT_GUARD {
        return Err(LatinError::CountGuard { n, cap: COUNT_GUARD });
    }
    Ok(permanent_01(&problem.reduced_matrix()))
}

/// Permanent of a square 0/1 matrix given as bit rows.
pub fn permanent_01(matrix: &[Vec<bool>]) -> u128 {
    let m = matrix.len();
    if m == 0 {
        return 1;
    }
    assert!(m <= 32, "permanent guard");
    let rows: Vec<u64> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), m);
            r.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | (u64::from(b) << j))
        })
        .collect();
    let mut row_sums = vec![0i64; m];
    let mut total: i128 = 0;
    let mut prev_gray: u64 = 0;
    for s in 1u64..(1u64 << m) {
        let gray = s ^ (s >> 1);
        let diff = gray ^ prev_gray;
        let j = diff.trailing_zeros() as usize;
        let delta = if gray & diff != 0 { 1 } else { -1 };
        for (i, &bits) in rows.iter().enumerate() {
            if bits & (1 << j) != 0 {
                row_sums[i] += delta;
            }
        }
        prev_gray = gray;
        let mut prod: i128 = 1;
        for &v in &row_sums {
            if v == 0 {
                prod = 0;
                break;
            }
            prod *= v as i128;
        }
        if prod != 0 {
            let sign = if (m as u32 - gray.count_ones()) % 2 == 0 { 1 } else { -1 };
            total += sign * prod;
        }
    }
    debug_assert!(total >= 0);
    total as u128
}

/// A partial latin square under row-by-row completion (0 marks empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSquare {
    n: usize,
    cells: Vec<usize>,
}

impl PartialSquare {
    pub fn from_staircase(stair: &Staircase) -> Self {
        let n = stair.n();
        let mut cells = vec![EMPTY; n * n];
        for row in 1..=n {
            for col in 1..=n {
                cells[(row - 1) * n + (col - 1)] = stair.get(row, col);
            }
        }
        PartialSquare { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    fn set(&mut self, row: usize, col: usize, sym: usize) {
        self.cells[(row - 1) * self.n + (col - 1)] = sym;
    }

    pub fn row_complete(&self, row: usize) -> bool {
        (1..=self.n).all(|c| self.get(row, c) != EMPTY)
    }

    pub fn filled_in_row(&self, row: usize) -> usize {
        (1..=self.n).filter(|&c| self.get(row, c) != EMPTY).count()
    }

    fn column_contains(&self, col: usize, sym: usize) -> bool {
        (1..=self.n).any(|r| self.get(r, col) == sym)
    }

    /// No repeated symbol in any row or column; values in range.
    pub fn check_consistent(&self) -> Result<(), LatinError> {
        let n = self.n;
        for row in 1..=n {
            let mut seen = vec![false; n + 1];
            for col in 1..=n {
                let s = self.get(row, col);
                if s == EMPTY {
                    continue;
                }
                if s > n || seen[s] {
                    return Err(LatinError::BadPartial { row });
                }
                seen[s] = true;
            }
        }
        for col in 1..=n {
            let mut seen = vec![false; n + 1];
            for row in 1..=n {
                let s = self.get(row, col);
                if s == EMPTY {
                    continue;
                }
                if seen[s] {
                    return Err(LatinError::BadPartial { row });
                }
                seen[s] = true;
            }
        }
        Ok(())
    }

    pub fn into_array(self) -> Result<PermArray, LatinError> {
        if self.cells.iter().any(|&c| c == EMPTY) {
            return Err(LatinError::FinalCheck);
        }
        let rows: Vec<Vec<usize>> = self.cells.chunks(self.n).map(|r| r.to_vec()).collect();
        PermArray::from_rows(rows).map_err(|_| LatinError::FinalCheck)
    }
}

/// Completes one row by a perfect matching between its free columns and
/// unused symbols, respecting every filled cell of each column. Columns are
/// scanned ascending and symbols tried ascending, so the completion is
/// deterministic. On failure the König zero block is reported in terms of
/// symbols and columns of the reduced matrix.
pub fn complete_row(square: &PartialSquare, row: usize) -> Result<PartialSquare, LatinError> {
    let n = square.n();
    let free_cols: Vec<usize> = (1..=n).filter(|&c| square.get(row, c) == EMPTY).collect();
    let used: Vec<usize> = (1..=n).map(|c| square.get(row, c)).filter(|&s| s != EMPTY).collect();
    let unused: Vec<usize> = (1..=n).filter(|s| !used.contains(s)).collect();
    debug_assert_eq!(free_cols.len(), unused.len());
    let adj: Vec<Vec<usize>> = free_cols
        .iter()
        .map(|&c| {
            unused
                .iter()
                .enumerate()
                .filter(|(_, &s)| !square.column_contains(c, s))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let matching = max_bipartite_matching(&adj, unused.len());
    if matching.size < free_cols.len() {
        let block = koenig_zero_block(&adj, &matching).expect("matching is not perfect");
        // The matching runs columns -> symbols; the availability matrix is
        // symbols x columns, so the block sides swap roles here.
        return Err(LatinError::NoMatching {
            row,
            symbols: block.cols.iter().map(|&i| unused[i]).collect(),
            columns: block.rows.iter().map(|&i| free_cols[i]).collect(),
        });
    }
    let mut next = square.clone();
    for (ci, &col) in free_cols.iter().enumerate() {
        let sym = unused[matching.pair_left[ci].expect("perfect matching")];
        next.set(row, col, sym);
    }
    Ok(next)
}

/// All completions of one row of a partial square (used only at small
/// orders, where a later row may force backtracking).
fn enumerate_row_completions(square: &PartialSquare, row: usize) -> Vec<Vec<(usize, usize)>> {
    let n = square.n();
    let free_cols: Vec<usize> = (1..=n).filter(|&c| square.get(row, c) == EMPTY).collect();
    let used: Vec<usize> = (1..=n).map(|c| square.get(row, c)).filter(|&s| s != EMPTY).collect();
    let unused: Vec<usize> = (1..=n).filter(|s| !used.contains(s)).collect();
    let mut out = Vec::new();
    let mut assignment = Vec::new();
    let mut taken = vec![false; unused.len()];
    fn rec(
        square: &PartialSquare,
        free_cols: &[usize],
        unused: &[usize],
        taken: &mut Vec<bool>,
        idx: usize,
        assignment: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if idx == free_cols.len() {
            out.push(assignment.clone());
            return;
        }
        let col = free_cols[idx];
        for (i, &sym) in unused.iter().enumerate() {
            if taken[i] || square.column_contains(col, sym) {
                continue;
            }
            taken[i] = true;
            assignment.push((col, sym));
            rec(square, free_cols, unused, taken, idx + 1, assignment, out);
            assignment.pop();
            taken[i] = false;
        }
    }
    rec(square, &free_cols, &unused, &mut taken, 0, &mut assignment, &mut out);
    out
}

fn even_reflection(n: usize) -> impl Fn(usize) -> usize {
    move |s| n + 1 - s
}

/// The partial square seeding the latin completion: the canonical witness
/// staircase of the first `b-1` basic rectangles plus its mirror image in
/// the top-right corner (and, for odd orders, the centre cell `(2, h)`
/// filled with the reflection of the symbol above it).
pub fn seed_partial(order: Order, seed: u64) -> Result<Staircase, LatinError> {
    let n = order.n();
    if n == 1 {
        let mut stair = Staircase::new(order);
        stair.push_cell(1, 1);
        return Ok(stair);
    }
    let mut stair = if let Some(fixture_stair) = fixtures::fixture_staircase(n) {
        fixture_stair
    } else if order.is_odd() {
        odd_staircase(order, seed, false)?.0
    } else {
        even_staircase(order, seed)?
    };
    let b = stair.rects().len();
    let seed_rows = stair.rects()[b - 2].rows.max(1);
    if order.is_odd() {
        let pi = ReflectionMap::new(order)?;
        for row in 2..=seed_rows {
            stair.mirror_row(row, |s| pi.apply(s));
        }
        let h = order.h().expect("odd");
        if seed_rows >= 2 && stair.get(2, h) == EMPTY {
            let z = stair.get(1, h);
            stair.set_raw(2, h, pi.apply(z));
        }
    } else {
        let map = even_reflection(n);
        for row in 2..=seed_rows {
            stair.mirror_row(row, &map);
        }
    }
    Ok(stair)
}

/// Left staircase for even orders: identity first row, ascending upper half
/// in row 2, and the same repair-then-copy stage loop as the odd pipeline.
/// Without the repair a complement pair can land in a band whose whole
/// content is forced into one row (first at order 30), so each rectangle is
/// made band-pair-free before its symbols move down. No cells are pinned,
/// so chains may touch (1,1), (2,2) and (3,3) freely.
fn even_staircase(order: Order, seed: u64) -> Result<Staircase, LatinError> {
    let n = order.n();
    debug_assert!(n >= 2 && n % 2 == 0);
    let mut stair = Staircase::new(order);
    for s in 1..=n {
        stair.push_cell(1, s);
    }
    let b = stair.rects().len();
    if b >= 3 {
        for s in n / 2 + 1..=n {
            stair.push_cell(2, s);
        }
        for t in 3..=b - 1 {
            let k = t - 1;
            if (3..=b.saturating_sub(2)).contains(&k) {
                repair_in_place(&mut stair, k, false)?;
            }
            let mut filler = StageFiller::new(stair, seed);
            let mut accept = |_: &mut StageFiller| Ok(true);
            if !filler.fill_stage(t, &[], &mut accept)? {
                return Err(LatinError::SeedSearch { n });
            }
            stair = filler.into_staircase();
        }
    }
    Ok(stair)
}

/// Builds a type-1,2 latin array of any order: stored arrays for 11 and 13,
/// otherwise seed-then-complete. Rows up to `ceil(n/2)` are completed in
/// order by matching (backtracking across rows below order 14, where the
/// free-choice bound does not apply); the remaining rows always extend.
pub fn build_lrpa12(order: Order, seed: u64) -> Result<PermArray, LatinError> {
    let n = order.n();
    if n == 1 {
        return PermArray::from_rows(vec![vec![1]]).map_err(|_| LatinError::FinalCheck);
    }
    if let Some(array) = fixtures::fixture(n) {
        return Ok(array);
    }
    let stair = seed_partial(order, seed)?;
    let mut square = PartialSquare::from_staircase(&stair);
    square.check_consistent()?;
    let half = n.div_ceil(2);
    if n >= 14 {
        for row in 1..=n {
            if !square.row_complete(row) {
                square = complete_row(&square, row)?;
            }
        }
    } else {
        let pending: Vec<usize> = (1..=half).filter(|&r| !square.row_complete(r)).collect();
        let mut budget = 2_000_000u64;
        square = complete_rows_dfs(&square, &pending, &mut budget)
            .ok_or(LatinError::SeedSearch { n })?;
        for row in half + 1..=n {
            square = complete_row(&square, row)?;
        }
    }
    let array = square.into_array()?;
    if !verify_latin(&array).passed()
        || !verify_rpa(&array, Corner::TopLeft).passed()
        || !verify_rpa(&array, Corner::TopRight).passed()
    {
        return Err(LatinError::FinalCheck);
    }
    Ok(array)
}

fn complete_rows_dfs(
    square: &PartialSquare,
    pending: &[usize],
    budget: &mut u64,
) -> Option<PartialSquare> {
    let Some((&row, rest)) = pending.split_first() else {
        return Some(square.clone());
    };
    for assignment in enumerate_row_completions(square, row) {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut next = square.clone();
        for (col, sym) in assignment {
            next.set(row, col, sym);
        }
        if let Some(done) = complete_rows_dfs(&next, rest, budget) {
            return Some(done);
        }
    }
    None
}

/// Uniform-ish random `k x n` latin rectangle: each row is a randomized
/// perfect matching against the columns' remaining symbols.
pub fn random_latin_rectangle<R: Rng>(k: usize, n: usize, rng: &mut R) -> LatinRect {
    assert!(k <= n && n >= 1);
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut col_used = vec![vec![false; n + 1]; n + 1];
    for _ in 0..k {
        let mut adj: Vec<Vec<usize>> = (1..=n)
            .map(|c| (0..n).filter(|&si| !col_used[c][si + 1]).collect())
            .collect();
        for list in adj.iter_mut() {
            list.shuffle(rng);
        }
        let matching = max_bipartite_matching(&adj, n);
        assert_eq!(matching.size, n, "a latin rectangle always extends");
        let mut row = vec![0usize; n];
        for (ci, sym_idx) in matching.pair_left.iter().enumerate() {
            let sym = sym_idx.expect("perfect matching") + 1;
            row[ci] = sym;
            col_used[ci + 1][sym] = true;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        LatinRect::empty(n)
    } else {
        LatinRect::new(rows).expect("construction preserves latinness")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn free_choice_formula() {
        assert_eq!(free_choice(3, 14).unwrap(), 8);
        assert_eq!(free_choice(0, 9).unwrap(), 8);
        assert_eq!(free_choice(7, 14).unwrap(), 1);
        assert_eq!(free_choice(8, 9).unwrap(), 8);
        assert!(free_choice(9, 9).is_err());
    }

    #[test]
    fn availability_extremes() {
        let empty = LatinRect::empty(5);
        let m = availability(&empty);
        for s in 1..=5 {
            assert_eq!(m.row_sum(s), 5);
        }
        // k = n - 1 leaves a permutation matrix.
        let rect = LatinRect::new(vec![
            vec![1, 2, 3],
            vec![2, 3, 1],
        ])
        .unwrap();
        let m = availability(&rect);
        for s in 1..=3 {
            assert_eq!(m.row_sum(s), 1);
        }
        for c in 1..=3 {
            assert_eq!(m.col_sum(c), 1);
        }
    }

    #[test]
    fn availability_on_stored_order_13() {
        let a = fixtures::example_13();
        let rect = LatinRect::new(vec![a.row(1).to_vec(), a.row(2).to_vec()]).unwrap();
        let m = availability(&rect);
        for s in 1..=13 {
            assert_eq!(m.row_sum(s), 11);
        }
        for c in 1..=13 {
            assert_eq!(m.col_sum(c), 11);
        }
    }

    #[test]
    fn completable_on_stored_prefill() {
        let a = fixtures::example_13();
        let rect = LatinRect::new(vec![a.row(1).to_vec(), a.row(2).to_vec()]).unwrap();
        let problem =
            RowFillProblem::new(rect, vec![(1, 9), (2, 6), (3, 1)]).unwrap();
        assert!(completable(&problem));
    }

    #[test]
    fn empty_rectangle_single_cell_completable() {
        let problem = RowFillProblem::new(LatinRect::empty(6), vec![(3, 5)]).unwrap();
        assert!(completable(&problem));
    }

    #[test]
    fn permanent_of_all_ones() {
        let problem = RowFillProblem::new(LatinRect::empty(3), vec![]).unwrap();
        assert_eq!(count_extensions(&problem).unwrap(), 6);
    }

    #[test]
    fn permanent_small_cases() {
        assert_eq!(permanent_01(&[]), 1);
        assert_eq!(permanent_01(&[vec![true]]), 1);
        assert_eq!(permanent_01(&[vec![false]]), 0);
        // Derangement count via zero diagonal.
        let m: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i != j).collect()).collect();
        assert_eq!(permanent_01(&m), 9);
    }

    #[test]
    fn subsquare_obstruction_is_not_completable() {
        // First three columns form a 3x3 latin subsquare on {1,2,3}; the
        // consistent prefill (col 4 <- 7, col 5 <- 4) then isolates a
        // 3 x 3 zero block in the reduced 5 x 5 matrix.
        let rect = LatinRect::new(vec![
            vec![1, 2, 3, 4, 5, 6, 7],
            vec![2, 3, 1, 5, 6, 7, 4],
            vec![3, 1, 2, 6, 7, 4, 5],
        ])
        .unwrap();
        let problem = RowFillProblem::new(rect.clone(), vec![(4, 7), (5, 4)]).unwrap();
        assert!(!completable(&problem));
        assert_eq!(count_extensions(&problem).unwrap(), 0);
        let exts = crate::oracle::enumerate_row_extensions(&rect, &[(4, 7), (5, 4)]).unwrap();
        assert!(exts.is_empty());
        // Without the prefill the rectangle extends fine.
        let open = RowFillProblem::new(rect, vec![]).unwrap();
        assert!(completable(&open));
    }

    #[test]
    fn prefill_consistency_enforced() {
        let rect = LatinRect::new(vec![vec![1, 2, 3], vec![2, 3, 1]]).unwrap();
        assert!(RowFillProblem::new(rect.clone(), vec![(1, 1)]).is_err());
        assert!(RowFillProblem::new(rect.clone(), vec![(1, 3), (1, 2)]).is_err());
        assert!(RowFillProblem::new(rect, vec![(1, 3), (2, 3)]).is_err());
    }

    #[test]
    fn complete_row_matches_stored_structure() {
        let a = fixtures::example_13();
        let stair = seed_partial(Order::new(13).unwrap(), 0).unwrap();
        let square = PartialSquare::from_staircase(&stair);
        square.check_consistent().unwrap();
        // Row 3 of the seed carries (9, 6, 1) on the left.
        assert_eq!(square.get(3, 1), 9);
        assert_eq!(square.get(3, 2), 6);
        assert_eq!(square.get(3, 3), 1);
        let next = complete_row(&square, 3).unwrap();
        assert!(next.row_complete(3));
        // No clash against the two completed rows.
        for col in 1..=13 {
            let s = next.get(3, col);
            assert_ne!(s, a.get(1, col));
            assert_ne!(s, a.get(2, col));
        }
    }

    #[test]
    fn seed_for_13_matches_stored_staircase() {
        let stair = seed_partial(Order::new(13).unwrap(), 0).unwrap();
        let expect = [13usize, 6, 3, 2, 2, 2, 1];
        for (i, &len) in expect.iter().enumerate() {
            assert_eq!(stair.len_of(i + 1), len, "row {}", i + 1);
            if i >= 1 {
                assert_eq!(stair.mirrored_of(i + 1), len);
            }
        }
        // Centre cell (2, 7) holds the reflection of the symbol above.
        assert_eq!(stair.get(2, 7), 7);
    }

    #[test]
    fn seed_row_budget() {
        for n in [13usize, 14, 16, 19, 24] {
            let order = Order::new(n).unwrap();
            let stair = seed_partial(order, 0).unwrap();
            let square = PartialSquare::from_staircase(&stair);
            for row in 2..=n {
                let cap = 2 * n.div_ceil(row);
                assert!(square.filled_in_row(row) <= cap, "n={n} row={row}");
            }
        }
    }

    #[test]
    fn seed_for_1_is_single_cell() {
        let stair = seed_partial(Order::new(1).unwrap(), 0).unwrap();
        assert_eq!(stair.len_of(1), 1);
        assert_eq!(stair.get(1, 1), 1);
    }

    #[test]
    fn unique_completion_at_full_height() {
        let rect = LatinRect::new(vec![vec![1, 2, 3], vec![2, 3, 1]]).unwrap();
        let problem = RowFillProblem::new(rect, vec![]).unwrap();
        assert_eq!(count_extensions(&problem).unwrap(), 1);
    }

    #[test]
    fn build_small_orders() {
        for n in 1..=16usize {
            let order = Order::new(n).unwrap();
            let a = build_lrpa12(order, 0).unwrap();
            assert!(verify_latin(&a).passed(), "n={n}");
            assert!(verify_rpa(&a, Corner::TopLeft).passed(), "n={n}");
            assert!(verify_rpa(&a, Corner::TopRight).passed(), "n={n}");
        }
    }

    #[test]
    fn stored_array_returned_at_13() {
        let a = build_lrpa12(Order::new(13).unwrap(), 0).unwrap();
        assert_eq!(a, fixtures::example_13());
    }

    #[test]
    fn random_rectangles_are_latin() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let k = rng.gen_range(0..=6);
            let rect = random_latin_rectangle(k, 6, &mut rng);
            assert_eq!(rect.k(), k);
        }
    }

    #[test]
    fn completable_monotone_under_cell_removal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(5..=9);
            let k = rng.gen_range(1..n);
            let rect = random_latin_rectangle(k, n, &mut rng);
            let Some(prefill) = random_prefill(&rect, 3, &mut rng) else { continue };
            let problem = RowFillProblem::new(rect.clone(), prefill.clone()).unwrap();
            if completable(&problem) && prefill.len() > 1 {
                for drop_idx in 0..prefill.len() {
                    let mut smaller = prefill.clone();
                    smaller.remove(drop_idx);
                    let sub = RowFillProblem::new(rect.clone(), smaller).unwrap();
                    assert!(completable(&sub));
                }
            }
        }
    }

    pub(super) fn random_prefill<R: Rng>(
        rect: &LatinRect,
        want: usize,
        rng: &mut R,
    ) -> Option<Vec<(usize, usize)>> {
        let n = rect.n();
        let mut cols: Vec<usize> = (1..=n).collect();
        cols.shuffle(rng);
        let mut used_syms = vec![false; n + 1];
        let mut out = Vec::new();
        for &col in &cols {
            if out.len() == want {
                break;
            }
            let mut syms: Vec<usize> =
                (1..=n).filter(|&s| !used_syms[s] && !rect.column_contains(col, s)).collect();
            if syms.is_empty() {
                continue;
            }
            syms.shuffle(rng);
            used_syms[syms[0]] = true;
            out.push((col, syms[0]));
        }
        (out.len() == want).then_some(out)
    }
}
