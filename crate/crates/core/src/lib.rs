//! Exact solvers for set cover with per-element demands or capacities, with
//! multiplicity and price variants, and their use for constructive agent
//! bribery under the consent rule of group identification.
//!
//! - [`instance`]: instance model, statistics, coverage and verification
//! - [`transform`]: complement reduction between demands and capacities
//! - [`branch`]: bounded search tree solver and its variants
//! - [`threshold`]: preprocessing plus brute force or greedy construction
//! - [`oracle`]: exhaustive reference solvers
//! - [`consent`], [`bribery`]: profiles, the consent rule and bribery solvers
//! - [`format`], [`generate`]: text formats and seeded generators

pub mod branch;
pub mod bribery;
pub mod consent;
pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod threshold;
pub mod transform;

pub use error::{Error, Result};
pub use instance::{InstanceStats, Mode, SetCoverInstance, Solution, Verdict, Violation};
