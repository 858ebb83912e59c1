//! Casimir energy, free energy, pressure and entropy between real-metal
//! plates, from either the surface-impedance boundary condition or the
//! Lifshitz formula with plasma or Drude permittivity.

pub mod casimir;
pub mod cli;
pub mod error;
pub mod impedance;
pub mod physcore;
pub mod quadrature;
pub mod reflection;
pub mod special;

pub use error::{Error, Result};
