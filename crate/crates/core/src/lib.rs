//! Girth of bipartite digraphs under out-degree constraints.
//!
//! The crate builds the standard extremal constructions, computes directed
//! girth and distance layers on bit-set digraphs, classifies points
//! `(alpha, beta)` of the compliance plane, searches exhaustively for small
//! counterexamples, and checks the numeric inequalities that the
//! large-girth arguments rely on.
//!
//! All thresholds are exact [`Rational`]s. The inequality checks in
//! [`lemma`] are generic over [`Scalar`] so the same formulas run in exact
//! arithmetic and in `f64`.

pub mod constructions;
pub mod digraph;
pub mod frontier;
pub mod lemma;
pub mod scalar;
pub mod search;

pub use digraph::{BipartiteDigraph, Cycle, Digraph, GeneralDigraph, GraphError, Side, VertexRef};
pub use scalar::Scalar;

/// Arbitrary-precision rational used for every threshold and degree ratio.
pub type Rational = num_rational::BigRational;

/// Floating type used by the numeric minimisation oracle.
pub type Real = f64;

/// A quadratic-bound instance in exact arithmetic.
pub type ExactInstance = lemma::NewineqInstance<Rational>;

/// A quadratic-bound instance in floating point.
pub type RealInstance = lemma::NewineqInstance<Real>;
