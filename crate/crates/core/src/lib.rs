//! Exact and simulated analysis of six card-shuffling models.
//!
//! Shelf shufflers (lazy, standard, strict) and riffle shuffles (up-down,
//! down-up, classic) are encoded by bounded P-partitions over the barred
//! integer alphabet `0 < 1- < 1 < 2- < 2 < ...`. The probability of a deck
//! order is an order polynomial of a chain divided by the number of
//! outcomes, which depends only on one permutation statistic (left peaks,
//! peaks or descents). Everything numeric is exact: `BigInt` counts and
//! `BigRational` probabilities.
//!
//! Module map:
//!
//! - [`perm`]: permutations, descents/peaks/left peaks, cycle types.
//! - [`ppartition`]: barred integers, posets, P-partitions, sorting
//!   permutations and the shuffle-outcome bijections.
//! - [`orderpoly`]: closed-form chain order polynomials and identity checks.
//! - [`model`]: shuffle specs, samplers, exact distributions, convolution.
//! - [`analysis`]: statistic count tables, distances to uniformity and
//!   cycle-structure generating functions.

pub mod analysis;
pub mod error;
pub mod model;
pub mod numeric;
pub mod orderpoly;
pub mod perm;
pub mod ppartition;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use model::{ExactDist, Model, ShuffleSpec};
pub use perm::{CycleType, Permutation, Statistic};
pub use ppartition::{BarredInt, Mode, PPartition, Poset};
pub use report::Report;
