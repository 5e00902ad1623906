//! Bohrification of finite-dimensional nets of observables on a 1+1
//! dimensional lattice, with exact checks of locality and descent.

pub mod algebra;
pub mod contexts;
pub mod descent;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod net;
pub mod scalar;
pub mod spacetime;
pub mod spectra;

pub use algebra::{AlgebraSpan, GeneratorDecl};
pub use matrix::Mat;
pub use scalar::Scalar;
