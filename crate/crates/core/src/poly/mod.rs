//! Sparse multivariate polynomials over exact fields.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_in, parse_poly, split_list, ExprContext};
pub use polynomial::{PolyRing, Polynomial};

pub(crate) use polynomial::{fresh_name, is_identifier};
