//! Exact computations on rational fans: conewise linear functions, their
//! multivalued analogues, graded pieces of the cokernel of
//! `Ω¹ → Ω̃¹` on affine toric charts, and wall certificates for the
//! nonvanishing of its first cohomology.

pub mod cli;
pub mod cone;
pub mod cpl;
pub mod danilov;
pub mod dichotomy;
pub mod error;
pub mod fan;
pub mod json;
pub mod linalg;
pub mod multival;
pub mod report;

pub use error::{Error, Result};
