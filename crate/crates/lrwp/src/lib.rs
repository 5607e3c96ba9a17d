//! Grid oracles for the closed-form packets of [`lrwp_core`], plus the
//! command-line plumbing around them.

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod invariant_ops;
pub mod oracle;
pub mod output;
pub mod runs;
pub mod spectral;

pub use error::{LrwpError, Result};
