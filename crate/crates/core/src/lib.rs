//! Minimal zeros of copositive matrices and the minimal representation of
//! their zero sets.
//!
//! Given a symmetric copositive matrix `X`, the set of normalized zeros
//! `T0 = { t >= 0, sum(t) = 1, t'Xt = 0 }` is a finite union of polytopes.
//! This crate enumerates the normalized minimal zeros of `X`, builds the
//! minimal zeros graph on them, enumerates its maximal cliques, and turns
//! every maximal clique into one polytope `conv{ tau(j) : j in clique }` of
//! the (unique) minimal representation of `T0`.
//!
//! The pipeline is:
//!
//! 1. [`minimal_zeros::enumerate_minimal_zeros`] searches supports by
//!    increasing size, skipping any candidate that contains an accepted
//!    support, and accepts a candidate when its principal submatrix has
//!    corank one and a strictly positive kernel vector.
//! 2. [`zerograph::extended_support_set`] pairs every support with the set
//!    `M(j)` of rows where `X tau(j)` vanishes, and [`zerograph::build_graph`]
//!    turns those pairs into the minimal zeros graph.
//! 3. [`zerograph::maximal_cliques`] and [`zerograph::build_representation`]
//!    produce the components of the representation.
//! 4. [`zeroset`] answers membership queries and checks the representation
//!    against a brute-force grid over the simplex.
//!
//! Arithmetic is exact over the rationals by default; a float mode with an
//! explicit [`TolerancePolicy`] is available for inputs that are not
//! rational.

pub mod copositivity;
pub mod error;
pub mod fixtures;
pub mod graphgen;
pub mod input;
pub mod minimal_zeros;
pub mod numerics;
pub mod report;
pub mod support;
pub mod zerograph;
pub mod zeroset;

pub use error::{Error, Result};
pub use minimal_zeros::MinimalZero;
pub use numerics::{Mode, Scalar, SymMatrix, TolerancePolicy};
pub use support::SupportSet;
