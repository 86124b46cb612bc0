//! Countable posets and preorders as lazy presentations, a catalog of the
//! order structures that obstruct hereditary reversibility, window-scale
//! verification of order-preserving self-maps, a certificate-producing
//! engine that extracts a forbidden substructure from any non-automorphism
//! witness, and the bridge to Alexandroff and upper topologies.
//!
//! Start from [`dsl::parse`] and [`dsl::elaborate`] to build a presentation,
//! [`catalog::forbidden`] / [`catalog::witness`] for the curated structures,
//! and [`extract::extract_forbidden`] for the extraction engine. Each major
//! capability has a runnable example under `examples/`.

pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod extract;
pub mod fixtures;
pub mod graphs;
pub mod maps;
pub mod order;
pub mod topology;
