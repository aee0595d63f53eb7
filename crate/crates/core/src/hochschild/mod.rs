//! Hochschild cochains of the polynomial algebra, modeled as
//! multidifferential operators, with the Gerstenhaber calculus.

mod gerst;
mod mdo;

pub use gerst::{adjoint_insertion, gerstenhaber_bracket, hkr, hochschild_delta};
pub use mdo::MultiDiffOp;
