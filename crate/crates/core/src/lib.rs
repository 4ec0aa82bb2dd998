//! Coadjoint orbits of the unitriangular group for small `n`.

pub mod admissible;
pub mod char_matrix;
pub mod cli;
pub mod error;
pub mod orbit;
pub mod root_system;
pub mod symbolic;

pub use error::{Error, Result};
