//! Artinian local algebras over exact fields.
//!
//! The crate builds quotients `k[X]/I` with finite length, computes their
//! local invariants and associated graded rings, constructs fibre products
//! and connected sums, decomposes Gorenstein algebras as connected sums when
//! the associated graded ring allows it, and computes Betti numbers of the
//! residue field from explicit minimal free resolutions.

pub mod decompose;
pub mod error;
pub mod graded;
pub mod grobner;
pub mod linalg;
pub mod polycore;
pub mod quotient;
pub mod resolution;
pub mod sums;

pub use error::{Error, Result};
pub use polycore::{Field, Monomial, PolyRing, Polynomial, Scalar, TermOrder};
