//! Exact arithmetic in `F_p` and deterministic elimination on sparse
//! matrices.

mod echelon;
mod field;
mod matrix;

pub use echelon::{
    pivot_columns, pivot_columns_with, rank, rank_with, solve_membership, solve_membership_with,
    EliminationConfig, DEFAULT_DENSE_BUDGET,
};
pub use field::{fp_inverse, is_prime, FpScalar, PrimeField, MODULUS_LIMIT};
pub use matrix::SparseMatrixFp;
