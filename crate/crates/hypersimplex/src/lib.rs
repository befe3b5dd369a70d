//! Simplices in compactified hyperbolic n-space.
//!
//! Lorentzian model algebra, the three models of H^n, simplex duality,
//! incenter and inradius, Hausdorff distances between skeleta, and the
//! extremal constants `tanh(mu^n_{n-1}) = 1/n`,
//! `tanh^2(mu^n_1) = (n-1)/(2n)` with limit `log(1+sqrt(2))`.

pub mod error;
pub mod figure;
pub mod lorentz;
pub mod models;
pub mod sample;
pub mod simplex;
pub mod skeleton;
pub mod verify;

mod opt;

pub use error::{Error, Result};
