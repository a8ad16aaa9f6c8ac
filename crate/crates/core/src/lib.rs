//! Helgason waves, the Helgason Fourier transform and horocyclic moiré
//! patterns on the hyperbolic plane.

pub mod cli;
pub mod error;
pub mod euclid;
pub mod geometry;
pub mod hft;
pub mod metrics;
pub mod moire;
pub mod quadrature;
pub mod taper;
pub mod validate;
pub mod waves;

pub use error::{Error, Result};
