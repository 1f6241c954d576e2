//! Exact scalars, dense matrices, subspaces and univariate polynomials over Q and GF(p).

pub mod field;
pub mod matrix;
pub mod subspace;
pub mod system;
pub mod univariate;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;
pub use system::LinearSystem;
pub use univariate::UniPoly;
