//! Weighted-graph optimization problems that bound how many copies of a
//! pattern a sparse `K_{3,3}`-free graph can contain.
//!
//! A probability mass on the pairs of a finite ground set stands in for an
//! edge-blow-up with part sizes proportional to the weights. Two functionals
//! of such a mass are maximized here:
//!
//! * the path functional `optp(μ; m)`, weighted `m`-vertex paths with
//!   weighted-degree factors at both ends;
//! * the blow-up functional `optb(μ; H, k)`, the sum of `μ(H')^k` over copies
//!   `H'` of a pattern `H`.
//!
//! Modules, bottom up:
//!
//! * [`graph`]: simple graphs, copy counting, automorphisms, canonical forms,
//!   class membership and small exact oracles;
//! * [`mass`]: masses on pairs and the two functionals with exact gradients;
//! * [`optimizer`]: multi-start ascent on the simplex with KKT certificates
//!   and known closed forms;
//! * [`oracle`]: independent brute-force and exact-arithmetic cross-checks;
//! * [`extremal`]: the lower-bound constructions, exact counts in them and
//!   the leading-term upper bounds.
//!
//! Evaluation is generic over [`Scalar`]; the aliases below fix the common
//! choices.

// `!(x > 0.0)` guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremal;
pub mod graph;
pub mod mass;
pub mod optimizer;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::Graph;
pub use mass::{EdgeMass, Objective};
pub use scalar::{Rational, Real, Scalar};

/// Double-precision mass, the optimizer's working type.
pub type Mass = EdgeMass<f64>;
/// Single-precision mass.
pub type Mass32 = EdgeMass<f32>;
/// Exact mass for certification.
pub type ExactMass = EdgeMass<Rational>;
/// Result of a double-precision optimization run.
pub type Optimum = optimizer::OptResult<f64>;
/// KKT report in exact arithmetic.
pub type ExactKkt = optimizer::KktReport<Rational>;
