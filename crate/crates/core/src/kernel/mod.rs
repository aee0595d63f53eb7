//! Exact arithmetic kernel: Artin-ring scalars, multivariate polynomials,
//! permutations and the Koszul sign engine.

pub mod perm;
pub mod poly;
pub mod scalar;

pub use perm::Permutation;
pub use poly::{Exponents, Poly};
pub use scalar::{rat_frac, rat_int, ArtinRing, Rat, Scalar};
