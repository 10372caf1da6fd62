//! Spherical harmonics in `p` dimensions, ultraspherical Legendre polynomials,
//! orthogonal polynomial machinery on `[-1, 1]`, and the Dirichlet problem on
//! the unit ball.

pub mod bvp;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod legendre;
pub mod orthopoly;
pub mod polyalg;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
