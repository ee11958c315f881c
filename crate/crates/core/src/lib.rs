//! Exact computations around totally reflexive modules over graded rings:
//! Stanley–Reisner rings of graphs, their Artinian reductions, exact zero
//! divisors, and verified windows of totally acyclic complexes.
//!
//! All algebra is generic over an exact [`Scalar`] field. The aliases below fix
//! the two fields the command-line tool works with.

pub mod error;
pub mod exactla;
pub mod graph;
pub mod grading;
pub mod structure;
pub mod complexes;
pub mod lifting;
pub mod factory;

pub use error::{Error, Result};
pub use exactla::{FieldSpec, Fp, Matrix, Scalar, Subspace, DEFAULT_PRIME};
pub use graph::{ConditionReport, Graph, GraphFile};
pub use grading::{ArtinianReduction, Element, GradedAlgebra, QuotientMap, ReductionMode};

/// Prime field with the default modulus.
pub type Gf = Fp<DEFAULT_PRIME>;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

pub type GfAlgebra = GradedAlgebra<Gf>;
pub type RationalAlgebra = GradedAlgebra<Rational>;
