//! Exact computation of Carlitz-module special numbers over `F_r(T)`
//! (Stirling-Carlitz, Cauchy-Carlitz, Bernoulli-Carlitz and higher-order
//! variants) alongside the classical Stirling and Cauchy families, with a
//! bounded verification suite for the identities relating them.

pub mod carlitz_basics;
pub mod carlitz_numbers;
pub mod classical;
pub mod cli;
pub mod compositions;
pub mod error;
pub mod exact_arith;
pub mod identities;
pub mod series;

pub use error::{Error, Result};
