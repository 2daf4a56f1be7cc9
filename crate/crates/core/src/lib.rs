//! Exact matrix models of stable sheaves with Hilbert polynomial `4m + 1`
//! on the projective plane over finite fields.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod flags;
pub mod plane;
pub mod presentations;
pub mod regressions;

pub use error::{Error, Result};
