//! Exact computations around the null cone of a representation given by
//! generators of its invariant ring.
//!
//! Starting from homogeneous invariant generators `p_1, ..., p_d` on
//! `V = Q^n`, the crate computes
//!
//! * the null-cone ideal `I = (p_1, ..., p_d)` degree by degree, with
//!   membership certificates ([`ideals`]);
//! * the Lie algebras `g0 = {A : D_A p_j = 0}` and `h0 = {A : D_A I ⊆ I}`
//!   together with affine stabilizers of fiber ideals ([`stabilizer`]);
//! * radicals, derived series and a reductivity verdict for matrix Lie
//!   algebras ([`liealg`]);
//! * leading-form ideals of fibers, Koszul reduction and regular-sequence
//!   tests for the cofree case ([`ideals`]).
//!
//! All arithmetic is exact over the rationals. Scenario files and the
//! built-in verification suite live in [`scenario`].

pub mod derivation;
pub mod error;
pub mod ideals;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod scenario;
pub mod stabilizer;

pub use derivation::derivation_apply;
pub use error::{Error, Result};
pub use invariants::{GeneratorSet, WeightSystem};
pub use matrix::{AffineMap, EndomorphismMatrix, Matrix, MatrixSpace};
pub use poly::{monomials_of_degree, Monomial, Polynomial, VarNames};
pub use scalar::Scalar;
