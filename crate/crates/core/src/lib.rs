//! Exact-arithmetic toolkit for triangular matrix algebras.
//!
//! A triangular matrix algebra is built from a triplet `(R, S, M)`: two
//! finite-dimensional algebras and an `(R, S)`-bimodule, assembled as
//! 2×2 upper-triangular matrices. This crate constructs such algebras,
//! identifies their module categories with comma categories, builds the
//! associated tilting complexes and derived-equivalent "mate" algebras,
//! and checks the derived invariants (Cartan matrices, unimodular
//! congruence, Coxeter polynomials, repetitive truncations) — all in
//! exact arithmetic over the rationals or a prime field.
//!
//! Everything is generic over the scalar type through [`field::Scalar`];
//! concrete aliases for the two supported fields live at the crate root.

// index-based loops over several parallel structures are the natural
// style for exact matrix kernels; silence the pedantic lint crate-wide
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bimodule;
pub mod field;
pub mod fixtures;
pub mod glue;
pub mod homology;
pub mod intmat;
pub mod invariants;
pub mod mate;
pub mod matrix;
pub mod module;
pub mod quiver;

pub use field::{FieldSpec, Fp, Scalar};
pub use intmat::IntMatrix;
pub use matrix::Matrix;

/// Exact rational scalar (arbitrary precision, always in lowest terms).
pub type Rat = num_rational::BigRational;

/// Dense matrix over the rationals.
pub type QMatrix = Matrix<Rat>;
/// Dense matrix over a prime field.
pub type FpMatrix = Matrix<Fp>;
