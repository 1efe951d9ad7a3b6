//! Random hull models of p-concave functions and numerical checks of
//! functional isoperimetric inequalities (quermassintegrals, Sobolev and
//! affine Sobolev) in low dimension.

pub mod error;
pub mod experiments;
pub mod functionals;
pub mod geometry;
pub mod model;
pub mod pconcave;
pub mod quadrature;
pub mod render;

pub use error::{Error, Result};
