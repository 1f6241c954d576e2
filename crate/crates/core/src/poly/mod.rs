//! Multivariate polynomials, the truncated ring `k[X]/<X>^l`, a text parser and linear changes of variables.

pub mod monomial;
pub mod multipoly;
pub mod parse;
pub mod truncated;

pub use monomial::Monomial;
pub use multipoly::{LinearChange, MultiPoly};
pub use parse::parse_poly;
pub use truncated::TruncatedRing;
