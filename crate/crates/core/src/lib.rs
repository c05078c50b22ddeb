//! Arithmetic Tutte polynomials of the classical root systems.

pub mod error;
pub mod finite_field;
pub mod fixtures;
pub mod genfun;
pub mod invariants;
pub mod lattice;
pub mod poly;
pub mod root_system;
pub mod series;
pub mod signed_graph;
pub mod tutte;

pub use error::{Error, Result};
pub use poly::{MultiPoly, Rational};
pub use series::{deformed_exponential, TruncSeries};
