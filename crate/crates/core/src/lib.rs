//! factoria: exact arithmetic for the correspondence between integer ratios
//! of factorials, cyclic quotient singularities, and {0,1}-valued step
//! functions, plus the numerical Nyman-Beurling least-squares machinery.
//!
//! Everything combinatorial is computed in exact rational / big-integer
//! arithmetic; only the `nyman` module uses floating point, and every float
//! it returns carries an explicit error bound.

pub mod arith;
pub mod bridge;
pub mod cli;
mod error;
pub mod nyman;
pub mod ratios;
pub mod singular;
pub mod solutions;

pub use arith::{LinearForm, Rational};
pub use bridge::{SignedTuple, StepFunction};
pub use error::{Error, Result};
pub use ratios::{FactorialRatioFamily, IntegralityStatus, IntegralityVerdict};
pub use singular::{Classification, CyclicQuotient, MldKind, MldResult, MldValue};
pub use solutions::{SolutionClass, SolutionRecord};
