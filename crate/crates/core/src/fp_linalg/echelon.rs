//! Deterministic rank and span membership over `F_p`.
//!
//! Columns are processed left to right. Each column is reduced against the
//! pivots found so far, always eliminating its smallest-index nonzero row
//! first; a column that survives becomes a new pivot whose pivot row is its
//! smallest remaining nonzero row. The pivot columns are therefore the
//! lexicographically first column basis, which does not depend on how the
//! work is split up.
//!
//! Before eliminating, the matrix is split into the connected components of
//! its row/column incidence graph. Rank is additive over components and
//! elimination never creates fill across them, so each component is solved on
//! its own, densely when `rows * cols` fits the configured budget and sparsely
//! otherwise.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{FpScalar, PrimeField};
use super::matrix::SparseMatrixFp;
use crate::error::Result;

pub const DEFAULT_DENSE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EliminationConfig {
    /// Largest `rows * cols` of a component that is eliminated densely.
    pub dense_budget: u64,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        Self {
            dense_budget: DEFAULT_DENSE_BUDGET,
        }
    }
}

impl EliminationConfig {
    pub fn dense_only() -> Self {
        Self {
            dense_budget: u64::MAX,
        }
    }

    pub fn sparse_only() -> Self {
        Self { dense_budget: 0 }
    }
}

pub fn rank(m: &SparseMatrixFp) -> usize {
    rank_with(m, &EliminationConfig::default())
}

pub fn rank_with(m: &SparseMatrixFp, cfg: &EliminationConfig) -> usize {
    pivot_columns_with(m, cfg).len()
}

/// Indices of the lexicographically first column basis, ascending.
pub fn pivot_columns(m: &SparseMatrixFp) -> Vec<usize> {
    pivot_columns_with(m, &EliminationConfig::default())
}

pub fn pivot_columns_with(m: &SparseMatrixFp, cfg: &EliminationConfig) -> Vec<usize> {
    let split = Components::of(m);
    let mut pivots = Vec::new();
    for comp in split.with_columns() {
        pivots.extend(eliminate(m, comp, &split.local_row, cfg, false).pivot_columns());
    }
    pivots.sort_unstable();
    pivots
}

/// Finds `c` with `m * c = v`.
///
/// Returns `None` when `v` is not in the column span. Otherwise the returned
/// solution is supported on [`pivot_columns`], which makes it unique.
pub fn solve_membership(m: &SparseMatrixFp, v: &[FpScalar]) -> Result<Option<Vec<FpScalar>>> {
    solve_membership_with(m, v, &EliminationConfig::default())
}

pub fn solve_membership_with(
    m: &SparseMatrixFp,
    v: &[FpScalar],
    cfg: &EliminationConfig,
) -> Result<Option<Vec<FpScalar>>> {
    m.check_vector(v)?;
    let k = m.field();
    let split = Components::of(m);
    let mut solution = vec![0u32; m.cols()];
    for comp in &split.all {
        let target: Vec<(usize, u32)> = comp
            .rows
            .iter()
            .filter(|&&r| !v[r].is_zero())
            .map(|&r| (split.local_row[r], v[r].value()))
            .collect();
        if target.is_empty() {
            continue;
        }
        if comp.cols.is_empty() {
            return Ok(None);
        }
        let basis = eliminate(m, comp, &split.local_row, cfg, true);
        match basis.express(&target) {
            Some(coeffs) => {
                for (col, c) in coeffs {
                    solution[col] = k.add(solution[col], c);
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(
        solution
            .into_iter()
            .map(|x| FpScalar::new(x as u64, k))
            .collect(),
    ))
}

struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

struct Components {
    all: Vec<Component>,
    /// Position of each global row inside its component's row list.
    local_row: Vec<usize>,
}

impl Components {
    fn of(m: &SparseMatrixFp) -> Self {
        let (nr, nc) = (m.rows(), m.cols());
        // nodes 0..nr are rows, nr..nr+nc are columns
        let mut parent: Vec<usize> = (0..nr + nc).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, col) in m.columns().iter().enumerate() {
            for &(r, _) in col {
                let (a, b) = (find(&mut parent, r), find(&mut parent, nr + c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut id_of_root = vec![usize::MAX; nr + nc];
        let mut all: Vec<Component> = Vec::new();
        let mut local_row = vec![0; nr];
        // Columns first so component order follows the smallest column index.
        for node in (nr..nr + nc).chain(0..nr) {
            let root = find(&mut parent, node);
            if id_of_root[root] == usize::MAX {
                id_of_root[root] = all.len();
                all.push(Component {
                    rows: Vec::new(),
                    cols: Vec::new(),
                });
            }
            let comp = &mut all[id_of_root[root]];
            if node >= nr {
                comp.cols.push(node - nr);
            }
        }
        for r in 0..nr {
            let comp = &mut all[id_of_root[find(&mut parent, r)]];
            local_row[r] = comp.rows.len();
            comp.rows.push(r);
        }
        Self { all, local_row }
    }

    fn with_columns(&self) -> impl Iterator<Item = &Component> {
        self.all.iter().filter(|c| !c.cols.is_empty())
    }
}

fn eliminate(
    m: &SparseMatrixFp,
    comp: &Component,
    local_row: &[usize],
    cfg: &EliminationConfig,
    track: bool,
) -> Box<dyn Echelon> {
    let cells = comp.rows.len() as u128 * comp.cols.len() as u128;
    let mut basis: Box<dyn Echelon> = if cells <= cfg.dense_budget as u128 {
        Box::new(DenseEchelon::new(m.field(), comp.rows.len(), track))
    } else {
        Box::new(SparseEchelon::new(m.field(), comp.rows.len(), track))
    };
    let mut local = Vec::new();
    for &c in &comp.cols {
        local.clear();
        local.extend(m.column(c).iter().map(|&(r, v)| (local_row[r], v)));
        basis.insert(c, &local);
    }
    basis
}

/// An incrementally built column echelon basis of one component.
trait Echelon {
    /// Reduces `column` (local rows, ascending) and keeps it if independent.
    fn insert(&mut self, col: usize, column: &[(usize, u32)]) -> bool;

    /// Expresses `target` as a combination of inserted pivot columns.
    /// Requires history tracking.
    fn express(&self, target: &[(usize, u32)]) -> Option<Vec<(usize, u32)>>;

    fn pivot_columns(&self) -> Vec<usize>;
}

/// Shared bookkeeping: for each pivot, `reduced = col - sum(mult * reduced_s)`.
struct History {
    field: PrimeField,
    track: bool,
    cols: Vec<usize>,
    steps: Vec<Vec<(usize, u32)>>,
}

impl History {
    fn new(field: PrimeField, track: bool) -> Self {
        Self {
            field,
            track,
            cols: Vec::new(),
            steps: Vec::new(),
        }
    }

    fn push(&mut self, col: usize, used: Vec<(usize, u32)>) {
        self.cols.push(col);
        if self.track {
            self.steps.push(used);
        }
    }

    /// Turns pivot multipliers into original column coefficients.
    fn back_substitute(&self, used: &[(usize, u32)]) -> Vec<(usize, u32)> {
        assert!(self.track, "membership requires elimination history");
        let k = self.field;
        let mut gamma = vec![0u32; self.cols.len()];
        for &(s, f) in used {
            gamma[s] = k.add(gamma[s], f);
        }
        let mut out = Vec::new();
        for i in (0..self.cols.len()).rev() {
            let g = gamma[i];
            if g == 0 {
                continue;
            }
            out.push((self.cols[i], g));
            for &(s, mult) in &self.steps[i] {
                gamma[s] = k.sub(gamma[s], k.mul(g, mult));
            }
        }
        out.reverse();
        out
    }
}

struct DenseEchelon {
    field: PrimeField,
    rows: usize,
    pivot_at_row: Vec<Option<usize>>,
    /// Dense reduced vectors; entries below the pivot row are zero.
    vectors: Vec<Vec<u32>>,
    lead_inv: Vec<u32>,
    history: History,
}

impl DenseEchelon {
    fn new(field: PrimeField, rows: usize, track: bool) -> Self {
        Self {
            field,
            rows,
            pivot_at_row: vec![None; rows],
            vectors: Vec::new(),
            lead_inv: Vec::new(),
            history: History::new(field, track),
        }
    }

    /// Reduces `acc` in place. Returns the first row that has no pivot, if
    /// any, plus the multipliers used.
    fn reduce(&self, acc: &mut [u32]) -> (Option<usize>, Vec<(usize, u32)>) {
        let k = self.field;
        let mut used = Vec::new();
        for r in 0..self.rows {
            if acc[r] == 0 {
                continue;
            }
            let Some(pi) = self.pivot_at_row[r] else {
                return (Some(r), used);
            };
            let f = k.mul(acc[r], self.lead_inv[pi]);
            let vec = &self.vectors[pi];
            for (a, &b) in acc[r..].iter_mut().zip(&vec[r..]) {
                if b != 0 {
                    *a = k.sub(*a, k.mul(f, b));
                }
            }
            used.push((pi, f));
        }
        (None, used)
    }

    fn densify(&self, column: &[(usize, u32)]) -> Vec<u32> {
        let mut acc = vec![0u32; self.rows];
        for &(r, v) in column {
            acc[r] = v;
        }
        acc
    }
}

impl Echelon for DenseEchelon {
    fn insert(&mut self, col: usize, column: &[(usize, u32)]) -> bool {
        let mut acc = self.densify(column);
        let (lead, used) = self.reduce(&mut acc);
        let Some(lead) = lead else {
            return false;
        };
        let pi = self.vectors.len();
        self.lead_inv
            .push(self.field.inv(acc[lead]).expect("pivot entry is nonzero"));
        self.pivot_at_row[lead] = Some(pi);
        self.vectors.push(acc);
        self.history.push(col, used);
        true
    }

    fn express(&self, target: &[(usize, u32)]) -> Option<Vec<(usize, u32)>> {
        let mut acc = self.densify(target);
        match self.reduce(&mut acc) {
            (Some(_), _) => None,
            (None, used) => Some(self.history.back_substitute(&used)),
        }
    }

    fn pivot_columns(&self) -> Vec<usize> {
        self.history.cols.clone()
    }
}

struct SparseEchelon {
    field: PrimeField,
    pivot_at_row: Vec<Option<usize>>,
    /// Sparse reduced vectors sorted by row; the first entry is the pivot.
    vectors: Vec<Vec<(usize, u32)>>,
    lead_inv: Vec<u32>,
    history: History,
    scratch: std::cell::RefCell<Scratch>,
}

/// Sparse accumulator: dense values plus a min-heap of possibly nonzero rows.
struct Scratch {
    values: Vec<u32>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl Scratch {
    fn load(&mut self, column: &[(usize, u32)]) {
        for &(r, v) in column {
            self.values[r] = v;
            self.queued[r] = true;
            self.heap.push(Reverse(r));
        }
    }

    /// Drains everything left, returning the nonzero entries in row order.
    fn drain(&mut self) -> Vec<(usize, u32)> {
        let mut rest = Vec::new();
        while let Some(Reverse(r)) = self.heap.pop() {
            self.queued[r] = false;
            let v = std::mem::take(&mut self.values[r]);
            if v != 0 {
                rest.push((r, v));
            }
        }
        rest
    }
}

impl SparseEchelon {
    fn new(field: PrimeField, rows: usize, track: bool) -> Self {
        Self {
            field,
            pivot_at_row: vec![None; rows],
            vectors: Vec::new(),
            lead_inv: Vec::new(),
            history: History::new(field, track),
            scratch: std::cell::RefCell::new(Scratch {
                values: vec![0; rows],
                queued: vec![false; rows],
                heap: BinaryHeap::new(),
            }),
        }
    }

    /// Same contract as the dense reduction. On an independent column the
    /// returned entries are the reduced vector, pivot first.
    fn reduce(&self, column: &[(usize, u32)]) -> (Option<Vec<(usize, u32)>>, Vec<(usize, u32)>) {
        let k = self.field;
        let mut s = self.scratch.borrow_mut();
        s.load(column);
        let mut used = Vec::new();
        while let Some(&Reverse(r)) = s.heap.peek() {
            if s.values[r] == 0 {
                s.heap.pop();
                s.queued[r] = false;
                continue;
            }
            let Some(pi) = self.pivot_at_row[r] else {
                return (Some(s.drain()), used);
            };
            s.heap.pop();
            s.queued[r] = false;
            let f = k.mul(s.values[r], self.lead_inv[pi]);
            for &(rr, b) in &self.vectors[pi] {
                let cur = s.values[rr];
                s.values[rr] = k.sub(cur, k.mul(f, b));
                if !s.queued[rr] && s.values[rr] != 0 {
                    s.queued[rr] = true;
                    s.heap.push(Reverse(rr));
                }
            }
            used.push((pi, f));
        }
        (None, used)
    }
}

impl Echelon for SparseEchelon {
    fn insert(&mut self, col: usize, column: &[(usize, u32)]) -> bool {
        let (rest, used) = self.reduce(column);
        let Some(vector) = rest else {
            return false;
        };
        let (lead, lead_val) = vector[0];
        let pi = self.vectors.len();
        self.lead_inv
            .push(self.field.inv(lead_val).expect("pivot entry is nonzero"));
        self.pivot_at_row[lead] = Some(pi);
        self.vectors.push(vector);
        self.history.push(col, used);
        true
    }

    fn express(&self, target: &[(usize, u32)]) -> Option<Vec<(usize, u32)>> {
        match self.reduce(target) {
            (Some(_), _) => None,
            (None, used) => Some(self.history.back_substitute(&used)),
        }
    }

    fn pivot_columns(&self) -> Vec<usize> {
        self.history.cols.clone()
    }
}
