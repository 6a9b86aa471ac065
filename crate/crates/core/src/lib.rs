//! Exact modular-group machinery and certified zero counts for Faber
//! polynomials of replicable Hauptmoduln.

pub mod error;
pub mod num;
pub mod projmat;
pub mod groups;
pub mod fundomain;
pub mod qseries;
pub mod faber;
pub mod zerocert;
pub mod svg;
pub mod properties;
pub mod acceptance;
pub mod cli;

pub use error::{Error, Result};
pub use rug::{Float, Integer, Rational};
