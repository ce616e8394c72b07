pub mod caching;
pub mod combinatorics;
pub mod error;
pub mod finite_snr;
pub mod gdof_region;
pub mod gndt;
pub mod lp;
pub mod polytope;
pub mod rational;

pub use error::{Error, Result};
pub use rational::{Extended, Rational};
