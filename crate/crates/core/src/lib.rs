//! Monotone signaling equilibria.
//!
//! Two layers share the same vocabulary:
//!
//! * [`finite`] enumerates pure-strategy perfect Bayesian equilibria of finite
//!   one-sender/one-receiver signaling games and compares the Criterion D1
//!   refinement with monotonicity in the stronger set order.
//! * [`cse`] computes the stronger monotone competitive signaling equilibrium
//!   of a continuum matching market with quasilinear utilities, and
//!   [`verify`] audits any candidate solution against the equilibrium
//!   conditions using only the solution tables and the model primitives.
//!
//! Numerical code is generic over the scalar type. Finite games accept exact
//! rationals as well as floats; the continuum solver accepts any
//! [`Real`](scalar::Real). The aliases below fix the common choices.

// `!(a < b)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cse;
pub mod error;
pub mod finite;
pub mod io;
pub mod model;
pub mod numeric;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{lit, Payoff, Real};

/// Exact rational payoffs for finite games.
pub type Rational = num_rational::Rational64;

/// Model primitives over `f64`.
pub type Primitives = model::ModelPrimitives<f64>;

/// Continuum equilibrium over `f64`.
pub type Solution = cse::CseSolution<f64>;

/// Finite game with exact payoffs.
pub type ExactGame = finite::FiniteGame<Rational>;

/// Finite game with floating-point payoffs.
pub type FloatGame = finite::FiniteGame<f64>;

/// Pure-strategy equilibrium of an [`ExactGame`].
pub type ExactPbe = finite::PurePbe<Rational>;
