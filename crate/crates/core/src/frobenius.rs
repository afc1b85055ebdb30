//! The map `A : V^* (x) H^0(Y, M) -> H^0(Y, M (x) O(0,0,p))` given by
//! multiplication with `[Y_0^p, ..., Y_n^p]`, on explicit monomial bases.
//!
//! Columns are indexed by pairs `(i, m)` with `i` ascending and, for each
//! `i`, `m` running through the source basis in canonical order. Rows follow
//! the canonical order of the target basis.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::fp_linalg::{
    rank_with, solve_membership_with, EliminationConfig, FpScalar, PrimeField, SparseMatrixFp,
};
use crate::incidence_ring::{
    component_dimension, monomial_basis, reduce_monomial, Bidegree, Monomial, RingElement,
};

pub const DEFAULT_MAX_ENTRIES: u64 = 50_000_000;

/// Upper limit on the stored entries of an assembled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixBudget {
    pub max_entries: u64,
}

impl Default for MatrixBudget {
    fn default() -> Self {
        Self {
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

/// One member `(n, p)` of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusProblem {
    pub n: usize,
    pub p: u32,
    pub field: PrimeField,
    /// Degree of `M = O(p-n+1, 0, (p-1)(n-1))`.
    pub source_degree: Bidegree,
    /// Degree of `M (x) O(0,0,p)`.
    pub target_degree: Bidegree,
    /// Built with `p < n - 1`, where no nonvanishing is claimed.
    pub exploratory: bool,
}

impl FrobeniusProblem {
    /// Requires `n >= 3` and a prime `p >= n - 1`.
    pub fn new(n: usize, p: u64) -> Result<Self> {
        Self::build(n, p, false)
    }

    /// Like [`FrobeniusProblem::new`] but also accepts primes `p < n - 1`.
    pub fn exploratory(n: usize, p: u64) -> Result<Self> {
        Self::build(n, p, true)
    }

    fn build(n: usize, p: u64, allow_small_p: bool) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("n must be ≥ 3 (got {n})")));
        }
        let field = PrimeField::new(p)?;
        let small = p + 1 < n as u64;
        if small && !allow_small_p {
            return Err(Error::InvalidInput(format!(
                "p must be ≥ n−1 (= {})",
                n - 1
            )));
        }
        let (ni, pi) = (n as i64, p as i64);
        let source_degree = Bidegree::new(pi - ni + 1, (pi - 1) * (ni - 1));
        Ok(Self {
            n,
            p: p as u32,
            field,
            source_degree,
            target_degree: source_degree.twist(0, pi),
            exploratory: small,
        })
    }

    /// `t = X_n^{p+1-n} Y_0 Y_1^{p-1} ... Y_n^{p-1}`; absent when `p < n - 1`.
    pub fn witness(&self) -> Option<Monomial> {
        let a = u32::try_from(self.source_degree.a).ok()?;
        let mut xexp = vec![0; self.n + 1];
        xexp[self.n] = a;
        let mut yexp = vec![self.p - 1; self.n + 1];
        yexp[0] = 1;
        Some(Monomial::new(xexp, yexp).expect("matching lengths"))
    }

    /// `(rows, cols, bound on stored entries)` before assembly.
    pub fn projected_size(&self) -> Result<(u128, u128, u128)> {
        let rows = component_dimension(self.n, self.target_degree)?;
        let cols = (self.n as u128 + 1) * component_dimension(self.n, self.source_degree)?;
        // a product rewrites at most (X_0 Y_0)^a, giving C(a+n-1, n-1) terms
        let per_column = binomial(self.source_degree.a + self.n as i64 - 1, self.n as u64 - 1)?.max(1);
        let entries = cols
            .checked_mul(per_column)
            .ok_or_else(|| Error::Overflow("projected matrix entries".into()))?;
        Ok((rows, cols, entries))
    }
}

/// The assembled matrix of `A` together with its index maps.
#[derive(Clone, Debug)]
pub struct FrobeniusMatrix {
    pub problem: FrobeniusProblem,
    pub matrix: SparseMatrixFp,
    /// Target basis; row `r` is the coordinate of `row_basis[r]`.
    pub row_basis: Vec<Monomial>,
    /// Column `c` is `Y_i^p * m` for `col_labels[c] = (i, m)`.
    pub col_labels: Vec<(usize, Monomial)>,
    row_index: HashMap<Monomial, usize>,
}

pub fn build_matrix(prob: &FrobeniusProblem, budget: &MatrixBudget) -> Result<FrobeniusMatrix> {
    let (rows, cols, entries) = prob.projected_size()?;
    if entries > budget.max_entries as u128 {
        return Err(Error::BudgetExceeded {
            n: prob.n,
            p: prob.p,
            rows,
            cols,
            entries,
            budget: budget.max_entries,
        });
    }
    let (source, row_basis) = if prob.source_degree.a < 0 {
        (Vec::new(), Vec::new())
    } else {
        (
            monomial_basis(prob.n, prob.source_degree)?,
            monomial_basis(prob.n, prob.target_degree)?,
        )
    };
    let row_index: HashMap<Monomial, usize> = row_basis
        .iter()
        .enumerate()
        .map(|(r, m)| (m.clone(), r))
        .collect();
    let k = prob.field;
    let mut columns = Vec::with_capacity(cols as usize);
    let mut col_labels = Vec::with_capacity(cols as usize);
    for i in 0..=prob.n {
        let frob = Monomial::y(prob.n, i, prob.p);
        for m in &source {
            let mut column: Vec<(usize, u32)> = reduce_monomial(&m.mul(&frob)?, k)
                .into_iter()
                .map(|(t, v)| (row_index[&t], v))
                .collect();
            column.sort_unstable_by_key(|&(r, _)| r);
            columns.push(column);
            col_labels.push((i, m.clone()));
        }
    }
    let matrix = SparseMatrixFp::new(row_basis.len(), k, columns)?;
    Ok(FrobeniusMatrix {
        problem: *prob,
        matrix,
        row_basis,
        col_labels,
        row_index,
    })
}

impl FrobeniusMatrix {
    /// Coordinate vector of an element of the target component.
    pub fn coordinates(&self, e: &RingElement) -> Result<Vec<FpScalar>> {
        let k = self.problem.field;
        let mut v = vec![FpScalar::new(0, k); self.row_basis.len()];
        for (m, c) in e.terms() {
            let r = *self.row_index.get(m).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{m} is not in the target basis of bidegree {}",
                    self.problem.target_degree
                ))
            })?;
            v[r] = c;
        }
        Ok(v)
    }

    pub fn witness_vector(&self) -> Result<Option<Vec<FpScalar>>> {
        self.problem
            .witness()
            .map(|t| self.coordinates(&RingElement::from_monomial(&t, self.problem.field)))
            .transpose()
    }

    /// Writes the triple dump to `path` and the index maps to `path.rows`
    /// (`row monomial`) and `path.cols` (`col i monomial`, meaning
    /// `Y_i^p * monomial`).
    pub fn write_dump(&self, path: &Path) -> Result<()> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| Error::Io { path, source }
        };
        let rows_path = sidecar(path, "rows");
        let cols_path = sidecar(path, "cols");
        let mut out = BufWriter::new(File::create(path).map_err(io(path))?);
        self.matrix
            .write_dump(&mut out)
            .and_then(|_| out.flush())
            .map_err(io(path))?;
        let mut rows = BufWriter::new(File::create(&rows_path).map_err(io(&rows_path))?);
        for (r, m) in self.row_basis.iter().enumerate() {
            writeln!(rows, "{r} {m}").map_err(io(&rows_path))?;
        }
        rows.flush().map_err(io(&rows_path))?;
        let mut cols = BufWriter::new(File::create(&cols_path).map_err(io(&cols_path))?);
        for (c, (i, m)) in self.col_labels.iter().enumerate() {
            writeln!(cols, "{c} {i} {m}").map_err(io(&cols_path))?;
        }
        cols.flush().map_err(io(&cols_path))?;
        Ok(())
    }
}

/// `path` with `.suffix` appended to the file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub monomial: String,
    pub in_image: bool,
    /// Rank after appending the witness as an extra column.
    pub augmented_rank: usize,
}

/// Everything the report needs from one elimination pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAnalysis {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub rank: usize,
    /// Rank of the transpose, eliminated independently.
    pub transpose_rank: usize,
    pub witness: Option<WitnessOutcome>,
}

impl FrobeniusAnalysis {
    pub fn corank(&self) -> usize {
        self.rows - self.rank
    }

    pub fn kernel(&self) -> usize {
        self.cols - self.rank
    }
}

pub fn analyze(fm: &FrobeniusMatrix, cfg: &EliminationConfig) -> Result<FrobeniusAnalysis> {
    let m = &fm.matrix;
    let rank = rank_with(m, cfg);
    let transpose_rank = rank_with(&m.transpose(), cfg);
    let witness = match (fm.problem.witness(), fm.witness_vector()?) {
        (Some(t), Some(v)) => {
            let in_image = solve_membership_with(m, &v, cfg)?.is_some();
            let augmented_rank = rank_with(&m.with_column(&v)?, cfg);
            Some(WitnessOutcome {
                monomial: t.to_string(),
                in_image,
                augmented_rank,
            })
        }
        _ => None,
    };
    Ok(FrobeniusAnalysis {
        rows: m.rows(),
        cols: m.cols(),
        nnz: m.nnz(),
        rank,
        transpose_rank,
        witness,
    })
}

/// `dim coker A = rows - rank`, which is `dim H^{3n-4}(X, L^{-1})`.
pub fn corank(prob: &FrobeniusProblem) -> Result<usize> {
    let fm = build_matrix(prob, &MatrixBudget::default())?;
    Ok(fm.matrix.rows() - rank_with(&fm.matrix, &EliminationConfig::default()))
}

/// Whether the witness monomial lies in the image of `A`.
pub fn witness_in_image(prob: &FrobeniusProblem) -> Result<bool> {
    let fm = build_matrix(prob, &MatrixBudget::default())?;
    let v = fm
        .witness_vector()?
        .ok_or_else(|| Error::InvalidInput("no witness monomial when p < n−1".into()))?;
    Ok(solve_membership_with(&fm.matrix, &v, &EliminationConfig::default())?.is_some())
}
