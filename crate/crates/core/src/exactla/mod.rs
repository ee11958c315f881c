//! Exact linear algebra over a field.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{is_prime, FieldSpec, Fp, Scalar, DEFAULT_PRIME};
pub use subspace::{ComplementProjector, Subspace};
