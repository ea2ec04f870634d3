//! Exact verification of bracket identities for pencils of Lie algebras,
//! modified Yang-Baxter operators and their representations.

pub mod bimyb;
pub mod bunch;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod liecore;
pub mod ratlin;
pub mod rep;

pub use error::{Error, Result};
