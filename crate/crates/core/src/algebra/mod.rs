//! Exact Laurent polynomial arithmetic in the variables `x[i,j]`, `y[k]`,
//! `t`, the lexicographic term order used for initial terms, and echelon
//! forms of finite polynomial families.

mod echelon;
mod monomial;
mod order;
mod poly;
mod text;
mod universe;

pub use echelon::{row_echelon, same_span, EchelonBasis};
pub use monomial::ExponentVector;
pub use order::{x_chain, Direction, TermOrder};
pub use poly::Polynomial;
pub use text::{format_polynomial, parse_polynomial};
pub use universe::{Universe, Variable};
