//! Ortho-polygon visibility representations of embedded graphs.
//!
//! This crate tests whether an embedded graph admits an embedding-preserving
//! ortho-polygon visibility representation, computes an optimal one via
//! min-cost flow on a network derived from the planarized expansion, carries
//! a direct linear-style construction for 3-connected 1-plane graphs, and
//! ships generators for random 1-plane instance suites and the two
//! lower-bound families.
//!
//! The narrative guide lives in `book/`; its code snippets compile as
//! doc-tests of this crate.

pub mod drawing;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod compact;
pub mod construct3;
pub mod expansion;
pub mod flow;
pub mod graph;
pub mod ortho;
pub mod partition;

pub use error::{Error, Result};
