//! Exact structure theory for finite-dimensional associative algebras.

pub mod error;
pub mod exactmath;
pub mod poly;
pub mod algebra;
pub mod presentation;
pub mod forms;
pub mod certify;
pub mod oracle;
pub mod cli;

pub use error::{Error, Result};
