//! Degreewise presentations of standard graded algebras.

mod algebra;
mod quotient;
mod reduction;
pub mod relations;
mod stanley_reisner;

pub use algebra::{AlgebraJson, Element, GradedAlgebra, TableJson};
pub(crate) use algebra::{check_field, parse_scalars};
pub use quotient::{is_regular_up_to_bound, quotient_by_linear, QuotientMap};
pub use reduction::{artinian_reduction, expected_hilbert, reduce_with, ArtinianReduction, ReductionMode, ReductionSpec};
pub use relations::{algebra_from_relation_strings, algebra_from_relations, Polynomial};
pub use stanley_reisner::stanley_reisner;
