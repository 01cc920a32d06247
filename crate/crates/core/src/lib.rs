//! Spectral calculus for dense complex matrices and a seeded harness that
//! checks operator inequalities, invertibility results and spectral
//! inclusions on generated instances.

pub mod discretize;
pub mod error;
pub mod generators;
pub mod matcore;
pub mod runner;
pub mod seeds;
pub mod specsets;
pub mod theorems;

pub use error::{Error, Result};
