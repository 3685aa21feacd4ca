//! Exact cooperative games on simplicial complexes.
//!
//! A complex `Δ` on `[n]` lists the coalitions that may form. This crate
//! builds complexes from facets, computes links, stars and f-vectors,
//! evaluates probabilistic values and the generalized Shapley value, checks
//! the efficiency identity, searches symmetry groups and decomposes the
//! generalized Shapley value into classical Shapley values on facets. All
//! arithmetic is exact over big rationals.
//!
//! ```
//! use std::sync::Arc;
//! use cxgame::{fixtures, games::Game, values::generalized_shapley, Face, Rational};
//!
//! let square = Arc::new(fixtures::cycle(4));
//! let edge = Game::new(square, [(Face::of(&[1, 2]), Rational::one())]).unwrap();
//! assert_eq!(generalized_shapley(&edge, 1).unwrap(), Rational::new(1, 4).unwrap());
//! ```

pub mod complex;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod games;
pub mod io;
pub mod random;
pub mod symmetry;
pub mod values;

pub use complex::{FVector, Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use exactnum::{LinearSolution, Rational, RationalMatrix, SolveStatus};
pub use games::Game;
pub use symmetry::Permutation;
