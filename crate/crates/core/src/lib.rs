//! Point-wise verification of bracket-function determinant and Pfaffian
//! identities, exactly over the rationals and within tolerance over the
//! complex numbers.

pub mod bracket;
pub mod error;
pub mod evaluation;
pub mod harness;
pub mod identities;
pub mod linalg;
pub mod scalar;
pub mod symfunc;
