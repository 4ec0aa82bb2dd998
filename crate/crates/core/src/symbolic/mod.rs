//! Exact polynomial algebra, the Poisson bracket, ideals, and the reduction of
//! an admissible pair to its orbit ideal.

pub mod bracket;
pub mod field;
pub mod ideal;
pub mod poly;
pub mod tilde;

pub use bracket::{bracket, lie_bracket};
pub use field::{Field, FieldElement};
pub use ideal::{is_casimir_mod, is_poisson_ideal, IdealHandle};
pub use poly::{Monomial, Polynomial, PrimePoly, Var};
pub use tilde::{build_ideal, reduce_column, tilde_map, Constants, OrbitIdeal};
