//! Exact homology of twisted Morse-Smale-Witten and cellular complexes.

pub mod catalog;
pub mod complex;
pub mod cw;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod morse;
pub mod rings;

pub use error::{Error, Result};
