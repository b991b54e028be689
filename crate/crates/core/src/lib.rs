//! Finite-dimensional simulator for the physical-subspace amended Born rule.

pub mod born;
pub mod cli;
pub mod condition;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod model;
pub mod random;
pub mod scenarios;
pub mod verify;
