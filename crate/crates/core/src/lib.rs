//! Exact algebra for q-étale covers of cyclic p-gonal curves.

pub mod action;
pub mod atlas;
pub mod calculus;
pub mod error;
pub mod fixtures;
pub mod fq;
pub mod groupring;
pub mod params;
pub mod poly;
pub mod reps;
pub mod words;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use params::{CoverParams, Policy};
