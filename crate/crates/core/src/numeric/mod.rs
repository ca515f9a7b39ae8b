//! Scalar numerical building blocks shared by the solver and the verifier.

pub mod ode;
pub mod optimize;
pub mod quadrature;
pub mod roots;

pub use ode::{rk4_step, Rk4Integrator, StepControl};
pub use optimize::golden_section_max;
pub use quadrature::{adaptive_simpson, gauss_legendre};
pub use roots::{bisect, expand_bracket_up, try_bisect, Bracket};
