//! Planar 2-distance coloring driven by reducible configurations.
//!
//! The crate colors connected embedded planar graphs with maximum degree
//! `Δ ≥ 6` using at most `3Δ + 2` colors. The colorer repeatedly finds a
//! reducible configuration, shrinks the graph, colors the smaller graph and
//! extends the coloring back. A discharging auditor recomputes the charge
//! redistribution with exact rationals, and an exact branch-and-bound oracle
//! provides ground truth on small inputs.

pub mod batch;
pub mod classify;
pub mod colorer;
pub mod discharge;
pub mod error;
pub mod oracle;
pub mod planar;
pub mod reductions;
pub mod workbench;

pub use error::GraphError;
pub use planar::{Face, Faces, PlanarGraph, Vertex};
