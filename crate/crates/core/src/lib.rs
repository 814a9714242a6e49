//! Components of two-column Springer fibers through the combinatorics of
//! link patterns: orbit posets, Poincaré polynomials and singularity tests.

pub mod components;
pub mod error;
pub mod linkpattern;
pub mod orbitposet;
pub mod polynomial;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
