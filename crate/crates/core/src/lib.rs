//! Exact and statistical computation of the pick-up sticks probability
//! `p(n, k)`: the chance that no k-gon can be assembled from `n` sticks whose
//! lengths are drawn independently and uniformly from `[0, 1]`.
//!
//! The crate has three independent routes to the same number:
//!
//! - [`closedform`] evaluates two product formulas over generalized
//!   Fibonacci sequences ([`sequences`]).
//! - [`polytope`] computes `n!` times the exact volume of the region of
//!   sorted stick lengths that admit no k-gon, by enumerating the vertices of
//!   its halfspace description. It never touches the sequences.
//! - [`montecarlo`] samples sticks and tests the sorted-window polygon
//!   criterion.
//!
//! All exact work goes through [`exactmath`].

pub mod cli;
pub mod closedform;
pub mod error;
pub mod exactmath;
pub mod montecarlo;
pub mod polytope;
pub mod sequences;

pub use closedform::{Probability, Problem};
pub use error::{Error, Result};
pub use exactmath::{rat, BigInt, Rational, RationalMatrix};
pub use sequences::SequenceSpec;
