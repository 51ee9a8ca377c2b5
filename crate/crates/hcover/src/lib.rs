//! Exact toolkit for minimizing K_t counts in H-covered graphs: coverage
//! profiles, the associated integer program, extremal constructions,
//! remainder-class classification, a brute-force oracle, and seeded
//! random-graph experiments.

pub mod classify;
pub mod construct;
pub mod error;
pub mod graph;
pub mod ip;
pub mod oracle;
pub mod profile;
pub mod rand_lab;
pub mod report;

pub use error::{Error, Result};
pub use graph::Graph;
