//! Hilbert series, degrees of regularity and Macaulay-matrix tooling for
//! oil-and-vinegar and mixed polynomial systems over prime fields.

pub mod cli;
pub mod error;
pub mod ffield;
pub mod gb;
pub mod invariants;
pub mod macaulay;
pub mod polyring;
pub mod reproduce;
pub mod series;
pub mod sysgen;

pub use error::{Error, Result};
