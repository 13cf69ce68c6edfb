//! Waring-type image witnesses for noncommutative polynomials evaluated on
//! upper triangular rational matrices.
//!
//! Given a polynomial `p` of order `r` and a target matrix `A` with zeros
//! below the `r`-th superdiagonal, the crate constructs explicit inputs
//! `u_1, ..., u_m` with `p(u_1, ..., u_m) = A`, or a pair of such
//! evaluations summing to `A`, and checks the result in exact arithmetic.

pub mod algebra;
pub mod error;
pub mod search;
pub mod structure;
pub mod triangular;
pub mod witness;
pub mod cli;
pub mod io;
pub mod selftest;
