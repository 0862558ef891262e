//! Exact computations around SU(N) representation theory and the formal
//! inversion of Keller maps.
//!
//! * [`poly`]: rational multivariate (Laurent) polynomials and their text form.
//! * [`roots`]: the A_{N-1} root system, Weyl group and dimension formula.
//! * [`characters`]: Schur characters, tensor decomposition, Haar integrals.
//! * [`sym_tensor`]: `S^k C^N ⊗ S^l (C^N)*` with the maps div, E and Psi.
//! * [`jacobian`]: Keller maps, formal inverses and the Q^k pipeline.

pub mod characters;
pub mod error;
pub mod jacobian;
pub mod poly;
pub mod roots;
pub mod sym_tensor;

pub use error::{Error, ParseError, Result};
pub use poly::{parse_poly, ExpVec, Poly, Rat};
pub use roots::{PosRoot, RootSystemA, Weight, WeylElem};
