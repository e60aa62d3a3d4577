//! Exact power-series verification of quadratic hypergeometric
//! transformations, and high-precision evaluation of Ramanujan-type series
//! for `1/pi^2`.
//!
//! * [`arith`]: rationals, Pochhammer symbols, binomials, squarefree parts.
//! * [`power_series`]: truncated series over the rationals and the
//!   transformation checks built on them.
//! * [`sequences`]: `u_n`, `U_n`, `A_n`, `B_n` and recurrence checking.
//! * [`derivation`]: from a `5F4` evaluation to an integral series in `U_n`.
//! * [`hyper_eval`]: binary splitting, tail bounds, pi and sqrt oracles.

pub mod arith;
pub mod derivation;
pub mod error;
pub mod hyper_eval;
pub mod power_series;
pub mod sampling;
pub mod sequences;

pub use error::{Error, Result};
