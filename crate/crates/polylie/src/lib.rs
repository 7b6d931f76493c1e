//! Exact symbolic computations for loop-space decompositions of polyhedral
//! products, free Lie algebra generating sets with Whitehead-word labels,
//! and homotopy-nilpotency certification of quasi-p-regular groups.
//!
//! Everything is computed with exact integer arithmetic on truncated
//! Poincaré series and finite formal wedges of smash words; no floating
//! point anywhere.

pub mod error;
pub mod fiberdecomp;
pub mod freelie;
pub mod io;
pub mod nilcert;
pub mod polyprod;
pub mod series;
pub mod simplicial;
pub mod wedge;

pub use error::{Error, Result};
