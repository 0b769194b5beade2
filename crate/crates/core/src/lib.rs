//! Exact Dirac reduction and pure spinors on split fibers `V ⊕ V*`.

pub mod dirac;
pub mod error;
pub mod exterior;
pub mod gcs;
pub mod linalg;
pub mod polyform;
pub mod random;
pub mod scenario;
pub mod scalar;
pub mod serial;
pub mod spinor;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{MultiElement, Side};
pub use linalg::Matrix;
pub use scalar::{Gaussian, Rational, Scalar};
pub use subspace::{Ambient, Subspace};
