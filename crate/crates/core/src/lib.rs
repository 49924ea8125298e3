//! Closed-orbit theory of H- photodetachment inside a wedge-shaped cavity.
//!
//! The detached electron leaves the ion, bounces specularly off the two
//! wedge surfaces and may come back; each returning orbit imprints a
//! sinusoidal ripple on the photodetachment cross section. This crate finds
//! those orbits ([`orbits`]), evaluates the cross section ([`spectrum`]),
//! generates parameter sweeps ([`sweeps`]) and checks the analytic
//! ingredients numerically ([`oracle`]).

// `!(x > 0.0)` is the idiom used throughout to reject NaN along with the rest
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod orbits;
pub mod spectrum;
pub mod sweeps;

pub use error::{Error, Result};
