//! Path triangulations of planar point sets.
//!
//! The crate builds Delaunay-scaffolded triangulations whose 1-cells are
//! sampled paths, extracts path cycles with their mod-n walk arithmetic,
//! presents triangulations as free groups, checks nerves and good covers,
//! and traces discretized collapses of cones and spheres.

pub mod collapse;
pub mod cycles;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod nerve;
pub mod presentation;
pub mod triangulation;

pub use error::{Error, Result};
pub use geometry::{Point2, VertexId, EPS};
pub use triangulation::{triangulate, Triangulation, TriangulationConfig};
