//! Exact finite models for span calculus with local systems: indexing
//! posets, finite limits and ends, the path-category nerve, cartesian spans,
//! push-pull local systems and affine Koszul computations.

pub mod crw;
pub mod error;
pub mod fincat;
pub mod linalg;
pub mod nerve;
pub mod pushpull;
pub mod random;
pub mod rational;
pub mod simplex;
pub mod span;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rational::Q;
