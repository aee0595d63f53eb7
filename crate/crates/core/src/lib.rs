//! Exact graded-algebraic calculus on polynomial charts.
//!
//! The crate provides, over the coefficient ring Q[h]/(h^N):
//!
//! * an exact arithmetic kernel (rationals, multivariate polynomials,
//!   permutations and Koszul signs) — [`kernel`];
//! * differential forms, polyvector fields, contraction and the Schouten
//!   bracket — [`cartan`];
//! * Chevalley-Eilenberg cochain handles on the shifted Schouten algebra,
//!   with the contraction morphism from forms, composition, bracket and
//!   differential — [`ce`];
//! * the L-infinity structure twisted by a closed 3-form, its generalized
//!   Jacobi identities and Maurer-Cartan (twisted Poisson) theory — [`linfty`];
//! * multidifferential-operator Hochschild cochains with the Gerstenhaber
//!   bracket, cup product, braces, insertion operations and the
//!   alternation map from polyvectors — [`hochschild`];
//! * gauge calculus for nilpotent differential graded Lie algebras:
//!   Maurer-Cartan residuals, gauge action, Baker-Campbell-Hausdorff
//!   composition and 2-cell targets — [`deligne`];
//! * a seeded deterministic sampler for the property suites — [`sample`].
//!
//! All arithmetic is exact; equalities asserted by the test suites are
//! syntactic identities of canonical forms, never approximate.

pub mod cartan;
pub mod ce;
pub mod deligne;
pub mod error;
pub mod hochschild;
pub mod kernel;
pub mod linfty;
pub mod sample;

pub use cartan::{contract_iterated, schouten, DiffForm, MultiVector};
pub use error::{Error, Result};
pub use kernel::{ArtinRing, Permutation, Poly, Rat, Scalar};
