//! Shuffle algebra combinatorics, multiple polylogarithms and multiple zeta
//! values, the Drinfel'd associator, and the additive and multiplicative
//! Riemann–Hilbert reconstructions of the fundamental solutions of the
//! one-variable KZ equation.

// Negated float comparisons are used on purpose so that NaN fails checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod ncseries;
pub mod numerics;
pub mod report;
pub mod rhkz;
pub mod words;

pub use error::{Error, Result};
