//! Exact scalars, monomials, term orders and sparse polynomials, plus the
//! text format for presentations.

mod monomial;
mod order;
mod parse;
mod poly;
mod scalar;

pub use monomial::{monomials_of_degree, Monomial};
pub use order::TermOrder;
pub use parse::{parse_polynomial, parse_presentation, Presentation};
pub use poly::{poly_arith, sort_desc, ArithOp, PolyRing, Polynomial};
pub use scalar::{Field, Scalar};

pub(crate) use scalar::mod_inverse;
