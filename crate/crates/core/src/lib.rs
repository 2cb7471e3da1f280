//! Hierarchical 3D protein graphs and their complete SE(3)-invariant
//! geometric representations.
//!
//! The pipeline is `parse_structure` → `build_graph` → one of `gr_base`,
//! `gr_backbone`, `gr_allatom`; [`completeness`] rebuilds coordinates from a
//! representation alone, and [`model`] runs an untrained invariant
//! message-passing network over it.

pub mod chemistry;
pub mod cli;
pub mod completeness;
pub mod frame;
pub mod geometry;
pub mod graph;
pub mod model;
pub mod structure;
pub mod synthetic;

pub use chemistry::{chi_quadruples, AminoAcid};
pub use frame::{angle_distance, dihedral, wrap_angle, Frame, Vec3};
pub use geometry::{geometric_representation, GeometryError, GrSet};
pub use graph::{build_graph, degree_stats, GraphError, Level, ProteinGraph, DEFAULT_CUTOFF};
pub use structure::{parse_structure, Format, Structure, StructureError};
