//! The bigraded ring `F_p[X_0..X_n; Y_0..Y_n] / (X_0 Y_0 + ... + X_n Y_n)`.
//!
//! The single relation is its own Groebner basis for the lexicographic order
//! with `X_0` heaviest, so normal forms are spanned by the monomials not
//! divisible by `X_0 Y_0`.

mod basis;
mod element;
mod monomial;

pub use basis::{component_dimension, monomial_basis};
pub use element::{normal_form, reduce_monomial, RingElement};
pub use monomial::{Bidegree, Monomial};
