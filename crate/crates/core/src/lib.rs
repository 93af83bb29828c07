//! Exact verification of twisted tensor products of finite-dimensional
//! algebras.
//!
//! Algebras, coalgebras and Hopf algebras are stored as structure constants
//! over ℚ or GF(p). Every identity is checked exhaustively on basis tuples
//! with exact arithmetic, so a passing [`Report`] is a proof for that
//! instance.
//!
//! The modules build on each other:
//!
//! - [`scalar`] and [`linmap`]: exact fields and dimension-aware matrices
//! - [`algebra`]: algebras, Hopf algebras, comodule algebras and their axioms
//! - [`constructions`]: group algebras, `H₄`, smash products, Drinfeld doubles
//! - [`twisting`]: twisting maps and twisted tensor products
//! - [`invariance`]: the star-product and invariance-under-twisting engines
//! - [`suite`]: end-to-end pipelines for three families of examples

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod invariance;
pub mod linmap;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod twisting;

pub use algebra::{Algebra, Coalgebra, ComoduleAlgebra, HopfAlgebra};
pub use error::{Error, Result};
pub use linmap::{LinMap, SparseVec};
pub use report::{Failure, Report};
pub use scalar::{Field, Scalar};
