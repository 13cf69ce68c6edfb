//! Exact scalars, commutative and noncommutative polynomials, and the
//! polynomial text parser.

pub mod cpoly;
pub mod ncpoly;
pub mod parse;
pub mod rational;

pub use cpoly::{CPoly, Monomial, Role, SymId};
pub use ncpoly::{NcPoly, Word};
pub use parse::parse_ncpoly;
pub use rational::{format_rational, parse_rational, Rational};
