//! Online selection under an expected capacity constraint.
//!
//! Items arrive in a uniformly random order and must be accepted or rejected
//! on arrival. Instead of a hard budget, the selected weight only has to meet
//! the capacity in expectation over the arrival order and the algorithm's
//! own coins. The crate provides:
//!
//! - [`secretary`]: the t-Threshold rule (unit weights), its k-item version
//!   and the classical stop-at-first-pick baseline;
//! - [`offline`]: the fractional knapsack optimum, the augmented-capacity
//!   greedy `OFF` and an exact 0/1 oracle;
//! - [`online`]: `AUG-ON` and the randomized `ON` wrapper;
//! - [`lowerbound`]: the secretary lower-bound program and the adversarial LP;
//! - [`harness`]: generators and a reproducible parallel Monte-Carlo runner;
//! - [`algorithm`]: the [`OnlineAlgorithm`] trait and a name-keyed registry.

pub mod algorithm;
pub mod error;
pub mod harness;
pub mod io;
pub mod lowerbound;
pub mod model;
pub mod offline;
pub mod online;
pub mod secretary;

pub use algorithm::{AlgorithmParams, AlgorithmRegistry, OnlineAlgorithm};
pub use error::{Error, Result};
pub use model::{best_k_subset, buck_per_bang, random_permutation, ArrivalOrder, Instance, Item, RunOutcome, Selection};
