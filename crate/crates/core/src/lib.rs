//! Exact enumeration of normal and tree-child phylogenetic networks with few
//! reticulations.

pub mod algebra;
pub mod asym;
pub mod error;
pub mod exec;
pub mod gf;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
