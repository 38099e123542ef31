//! Exact integer linear algebra for cellular homology.
//!
//! Everything here is computed over `Z` with arbitrary-precision integers:
//! sparse integer matrices, Smith normal form with unimodular transforms,
//! chain complexes with labeled bases, Betti numbers and torsion, and
//! boundary-witness solving (`d w = x` over the integers).
//!
//! Floating point never appears. A mod-2 rank routine is provided as an
//! independent cross-check of sign conventions, not as a fast path.

pub mod complex;
pub mod matrix;
pub mod snf;

pub use complex::{Chain, ChainComplex, ComplexError, D2Witness, HomologySummary};
pub use matrix::{Int, IntMatrix, MatrixError};
pub use snf::{invariant_factors, smith_normal_form, Snf};
