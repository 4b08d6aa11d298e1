//! Exact computation of primitive ideals, second symbolic powers and the
//! torsion of conormal modules for pairs of polynomial ideals `h ⊆ g` over
//! the rationals.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyring`]: sparse polynomials with exact rational coefficients,
//!   monomial orders, partial derivatives and small polynomial matrices.
//! * [`parse`]: the session language (`ring ...; ideal name = ...;`).
//! * [`gb`]: a Buchberger engine shared by ideals and submodules of free
//!   modules (normal forms, elimination, syzygies, dimensions).
//! * [`deriv`]: logarithmic derivations and Jacobian ideals.
//! * [`primitive`]: the primitive ideal and the second symbolic power.
//! * [`conormal`]: presentations of `M`, `T(M)`, `N`, torsion numbers,
//!   freeness tests and the line case.
//! * [`cli`]: the `primctl` front end.

pub mod cli;
pub mod conormal;
pub mod deriv;
mod error;
pub mod gb;
pub mod parse;
pub mod polyring;
pub mod primitive;

pub use error::{Error, Result};
