//! Steady-state heat current through two XX-coupled qubits, each attached
//! to its own bosonic bath, with the environment-induced Lamb shift kept.
//!
//! Units: `hbar = k_B = 1`. The system Hamiltonian is
//! `H_S = eps1/2 sz1 + eps2/2 sz2 + g sx1 sx2` with `eps1 >= eps2 > 0`, `g > 0`.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod lambshift;
pub mod model;
pub mod quad;
pub mod validate;

pub use error::{Error, Result};
