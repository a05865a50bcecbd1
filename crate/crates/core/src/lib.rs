//! Exact-arithmetic toolkit for finite-dimensional bialgebras: co-Hochschild
//! cohomology, twisted derivations and their crossed module, R-matrix tangent
//! theory, Lie algebra / U(g) machinery, and the free differential bialgebra.

pub mod bialgebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod freediff;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod tensor;
pub mod twisted;

pub use bialgebra::{Bialgebra, Check, VerifyReport};
pub use error::{CotwistError, Result};
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::Scalar;
pub use tensor::TensorElement;
