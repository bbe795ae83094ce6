//! Exact dynamics of rational maps over Q.

pub mod algebra;
pub mod classify;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod orbifold;
pub mod search;

pub use error::{Error, Result};
