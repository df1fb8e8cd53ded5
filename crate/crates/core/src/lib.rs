//! Krull-Schmidt decompositions in the bicategory of finite-dimensional
//! algebras, bimodules and bimodule maps.

pub mod error;
pub mod algebra;
pub mod bimodule;
pub mod cli;
pub mod io;
pub mod kstheory;
pub mod linalg;

pub use error::{Error, Result};
