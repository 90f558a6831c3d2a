//! Support tau-tilting theory over bound quiver algebras and their Galois
//! coverings given by group gradings.

pub mod algebra;
pub mod covering;
pub mod error;
pub mod field;
pub mod fundamental;
pub mod group;
pub mod matrix;
pub mod par;
mod poly;
pub mod quiver;
pub mod rep;
pub mod samples;
mod sparse;
pub mod tilting;
pub mod tower;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use group::{Group, GroupElem, Word};
pub use matrix::Matrix;
pub use quiver::{BoundQuiver, LinComb, Path, Quiver};
