use std::io::{BufRead, Write};

use super::field::{FpScalar, PrimeField};
use crate::error::{Error, Result};

/// Column-major sparse matrix over `F_p`.
///
/// Each column is a list of `(row, value)` pairs sorted by row, with no
/// duplicate rows and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixFp {
    rows: usize,
    field: PrimeField,
    columns: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrixFp {
    /// Builds a matrix from already well-formed columns.
    pub fn new(rows: usize, field: PrimeField, columns: Vec<Vec<(usize, u32)>>) -> Result<Self> {
        for (j, col) in columns.iter().enumerate() {
            let mut prev: Option<usize> = None;
            for &(r, v) in col {
                if r >= rows {
                    return Err(Error::MalformedMatrix(format!(
                        "column {j} has row index {r} >= {rows}"
                    )));
                }
                if prev.is_some_and(|q| q >= r) {
                    return Err(Error::MalformedMatrix(format!(
                        "column {j} is not strictly sorted by row at {r}"
                    )));
                }
                if v == 0 || v >= field.modulus() {
                    return Err(Error::MalformedMatrix(format!(
                        "column {j} stores non-canonical value {v} at row {r}"
                    )));
                }
                prev = Some(r);
            }
        }
        Ok(Self {
            rows,
            field,
            columns,
        })
    }

    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        Self {
            rows,
            field,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triples, summing duplicates
    /// and dropping zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, field: PrimeField, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::MalformedMatrix(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            columns[c].push((r, field.reduce(v)));
        }
        for col in &mut columns {
            col.sort_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, u32)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 = field.add(last.1, v),
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
        Ok(Self {
            rows,
            field,
            columns,
        })
    }

    /// Dense constructor, row-major, mostly for tests and small examples.
    pub fn from_dense(field: PrimeField, data: &[Vec<u64>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().find(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let triplets = data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triplets(rows, cols, field, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, u32)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: usize, col: usize) -> FpScalar {
        let value = self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map_or(0, |i| self.columns[col][i].1);
        FpScalar::new(value as u64, self.field)
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                columns[r].push((c, v));
            }
        }
        Self {
            rows: self.cols(),
            field: self.field,
            columns,
        }
    }

    /// Returns a copy with row `r` moved to `perm[r]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.rows];
        for &t in perm {
            if t >= self.rows || std::mem::replace(&mut seen[t], true) {
                return Err(Error::MalformedMatrix("row map is not a permutation".into()));
            }
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut moved: Vec<_> = col.iter().map(|&(r, v)| (perm[r], v)).collect();
                moved.sort_by_key(|&(r, _)| r);
                moved
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            field: self.field,
            columns,
        })
    }

    /// Appends `v` (a dense vector of length `rows`) as a new last column.
    pub fn with_column(&self, v: &[FpScalar]) -> Result<Self> {
        self.check_vector(v)?;
        let mut out = self.clone();
        out.columns.push(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(r, x)| (r, x.value()))
                .collect(),
        );
        Ok(out)
    }

    pub fn mul_vec(&self, c: &[FpScalar]) -> Result<Vec<FpScalar>> {
        if c.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: c.len(),
            });
        }
        let k = self.field;
        let mut out = vec![0u32; self.rows];
        for (col, coef) in self.columns.iter().zip(c) {
            if coef.is_zero() {
                continue;
            }
            for &(r, v) in col {
                out[r] = k.add(out[r], k.mul(v, coef.value()));
            }
        }
        Ok(out.into_iter().map(|v| FpScalar::new(v as u64, k)).collect())
    }

    pub(crate) fn check_vector(&self, v: &[FpScalar]) -> Result<()> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|x| x.field() != self.field) {
            return Err(Error::InvalidInput(format!(
                "vector entry over F_{} used with a matrix over F_{}",
                bad.modulus(),
                self.field.modulus()
            )));
        }
        Ok(())
    }

    /// Writes the text dump: a `rows cols p` header, then one `row col value`
    /// line per stored entry in column-major order.
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {} {}", self.rows, self.cols(), self.field.modulus())?;
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                writeln!(out, "{r} {c} {v}")?;
            }
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(input: R) -> Result<Self> {
        let bad = |msg: String| Error::MalformedMatrix(msg);
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("empty dump".into()))?
            .map_err(|e| bad(e.to_string()))?;
        let head: Vec<u64> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(format!("header: {e}")))?;
        let [rows, cols, p] = head[..] else {
            return Err(bad(format!("header {header:?} is not `rows cols p`")));
        };
        let field = PrimeField::new(p)?;
        let mut columns: Vec<Vec<(usize, u32)>> = vec![Vec::new(); cols as usize];
        let mut last: Option<(usize, usize)> = None;
        for line in lines {
            let line = line.map_err(|e| bad(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let t: Vec<u64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| bad(format!("line {line:?}: {e}")))?;
            let [r, c, v] = t[..] else {
                return Err(bad(format!("line {line:?} is not `row col value`")));
            };
            let (r, c) = (r as usize, c as usize);
            if last.is_some_and(|(lr, lc)| (lc, lr) >= (c, r)) {
                return Err(bad(format!("line {line:?} breaks column-major order")));
            }
            if c >= columns.len() {
                return Err(bad(format!("column {c} >= {cols}")));
            }
            last = Some((r, c));
            columns[c].push((r, v as u32));
        }
        Self::new(rows as usize, field, columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rejects_malformed_columns() {
        assert!(SparseMatrixFp::new(2, f5(), vec![vec![(2, 1)]]).is_err());
        assert!(SparseMatrixFp::new(3, f5(), vec![vec![(1, 1), (1, 2)]]).is_err());
        assert!(SparseMatrixFp::new(3, f5(), vec![vec![(1, 1), (0, 2)]]).is_err());
        assert!(SparseMatrixFp::new(3, f5(), vec![vec![(0, 0)]]).is_err());
        assert!(SparseMatrixFp::new(3, f5(), vec![vec![(0, 5)]]).is_err());
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrixFp::from_triplets(
            3,
            2,
            f5(),
            [(2, 0, 1), (0, 0, 3), (2, 0, 4), (1, 1, 10)],
        )
        .unwrap();
        assert_eq!(m.column(0), &[(0, 3)]);
        assert!(m.column(1).is_empty());
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn transpose_and_entry() {
        let m = SparseMatrixFp::from_dense(f5(), &[vec![1, 2, 0], vec![0, 4, 3]]).unwrap();
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        for r in 0..2 {
            for c in 0..3 {
                assert_eq!(m.entry(r, c), t.entry(c, r));
            }
        }
    }

    #[test]
    fn dump_round_trips() {
        let m = SparseMatrixFp::from_dense(f5(), &[vec![1, 2, 0], vec![0, 4, 3]]).unwrap();
        let mut buf = Vec::new();
        m.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "2 3 5\n0 0 1\n0 1 2\n1 1 4\n1 2 3\n");
        assert_eq!(SparseMatrixFp::read_dump(&buf[..]).unwrap(), m);
    }

    #[test]
    fn dump_rejects_unsorted_lines() {
        let text = "2 2 5\n0 1 1\n0 0 1\n";
        assert!(SparseMatrixFp::read_dump(text.as_bytes()).is_err());
    }
}
