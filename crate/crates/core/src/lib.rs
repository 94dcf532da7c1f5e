//! Stability of matrix tuples under simultaneous conjugation.
//!
//! Points of `G^N` (and of `(Lie G)^N`) for `G = GL_n` or `SL_n` are
//! classified as polystable, stable or equicentral by exact linear algebra
//! on the unital algebra the tuple generates, and the verdicts are
//! cross-checked with one-parameter subgroup limits.

pub mod linalg;
pub mod onepar;
pub mod algebra;
pub mod stability;
pub mod io;
