//! Exact verification of a family of counterexamples to Kodaira vanishing in
//! characteristic `p`.
//!
//! For `n >= 3` and a prime `p >= n - 1`, `Y` is the incidence divisor
//! `sum X_i Y_i = 0` in `P^n x P^n` and `X` the projectivization of the
//! Frobenius pull-back of a rank `n - 1` bundle on `Y`. The crate computes
//! every `dim H^i(X, L^{-1})` for `L = O(1,n,1)` by reducing it to the kernel
//! and cokernel of one explicit map between graded pieces of the coordinate
//! ring of `Y`, whose rank is found by exact elimination over `F_p`.

mod binomial;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fp_linalg;
pub mod frobenius;
pub mod incidence_ring;
pub mod pipeline;

pub use binomial::binomial;
pub use error::{Error, Result};
