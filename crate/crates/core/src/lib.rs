//! Exact-arithmetic workbench for graded quotient path algebras: degreewise
//! bases and Hilbert data, minimal graded resolutions and Koszul-type
//! verdicts, (higher) preprojective constructions, and tooling for gradings
//! given by arrow weights, cuts, and conjugation.

pub mod cuts;
pub mod error;
pub mod format;
pub mod koszul;
pub mod linalg;
pub mod modules;
pub mod preprojective;
pub mod presentation;
pub mod quiver;

pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar};
pub use presentation::{Degree, Presentation};
pub use quiver::{Arrow, Element, Path, Quiver};
