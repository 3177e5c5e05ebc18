//! Exact variation-of-GIT computations for pointed plane curves and pointed
//! curves on the smooth quadric surface.

pub mod error;
pub mod criterion;
pub mod curve;
pub mod exact;
pub mod hessian;
pub mod inflection;
pub mod walls;

pub use error::{Error, Result};
