//! Exact computations with nilpotent Lie algebras and superalgebras: tori,
//! root decompositions, solvable extensions and their normal forms,
//! derivations and adjoint cohomology.

pub mod algebra;
pub mod algfile;
pub mod cohom;
pub mod construct;
pub mod corpus;
pub mod deriv;
pub mod dld;
pub mod error;
pub mod exactla;
pub mod torus;

pub use algebra::{Algebra, Kind, SeriesReport, SparseVec, ValidationReport, Violation};
pub use error::{Error, Result};
pub use exactla::{RatMatrix, Rational, Subspace};
