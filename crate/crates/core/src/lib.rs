//! Pareto-algebraic interfaces for quality and resource management.
//!
//! Configuration sets over partially-ordered dimensions, the operations that
//! compose them while preserving dominance, the six-part QRM interface with
//! its alternatives and aggregation patterns, a small specification language
//! (QRML) and a solver for the video-processing resource manager.

pub mod json;
pub mod pareto;
pub mod poset;
pub mod qrm;
pub mod qrml;
pub mod solver;
pub mod video;
