//! Polynomial approximation under two-sided exponential weights through
//! Meixner–Pollaczek expansions.
//!
//! The crate provides the weights ([`measures`]), the orthogonal families and
//! their Gauss rules ([`orthopoly`]), spectral expansions and coefficient
//! functionals ([`spectral`]), strip-analytic identities ([`strip`]), the
//! Gaussian tightness family ([`tightness`]), product measures ([`tensor`])
//! and hyperbolic/Poincaré checks ([`inequalities`]).

pub mod dd;
pub mod error;
pub mod function;
pub mod inequalities;
pub mod measures;
pub mod orthopoly;
pub mod quad;
pub mod special;
pub mod spectral;
pub mod strip;
pub mod tensor;
pub mod tightness;
pub mod tridiag;

pub use error::{Error, Result};
