//! Level-tagged geometric representations of protein graphs.
//!
//! Every directed edge `j → i` gets a base tuple `(d, θ, φ, τ)`. Backbone and
//! all-atom graphs additionally get the Euler triple relating the two backbone
//! frames, and all-atom graphs get up to four side-chain torsions per node.

mod allatom;
mod backbone;
mod base;
mod json;

pub use allatom::{chi_angles, chi_from_atoms, gr_allatom, ChiSet};
pub use backbone::{
    backbone_frame, backbone_torsions, euler_triple, gr_backbone, propagate_frame,
    rotation_from_euler, BackboneTorsions, EulerTriple,
};
pub use base::{base_tuple, ca_frame, gr_base, BaseTuple};
pub use json::{gr_from_json, gr_to_json};
pub(crate) use base::frame_from_anchors;

use crate::chemistry::AminoAcid;
use crate::graph::{Level, ProteinGraph, SeqDist};
use crate::structure::ResidueId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("frame neighbors are collinear")]
    CollinearNeighbors,
    #[error("node index out of range or chain too short for a frame")]
    OutOfRange,
    #[error("torsion axis has zero length")]
    DegenerateAxis,
    #[error("torsion plane is undefined (point on axis)")]
    DegeneratePlane,
    #[error("frame is not orthonormal and right-handed")]
    DegenerateFrame,
    #[error("N, CA and C are collinear")]
    CollinearBackbone,
    #[error("backbone planes are parallel; fallback Euler triple used")]
    ParallelPlanes { fallback: EulerTriple },
    #[error("nodes {0} and {1} have coincident CA positions")]
    CoincidentNodes(usize, usize),
    #[error("residue {0} is missing backbone atoms")]
    MissingBackboneAtom(ResidueId),
    #[error("operation needs level {needed}, graph is {got}")]
    LevelMismatch { needed: Level, got: Level },
}

/// Where a non-fatal geometry problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Node(usize),
    Edge { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeomIssue {
    pub site: Site,
    pub error: GeometryError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeGeometry {
    /// Center node (message destination).
    pub i: usize,
    /// Neighbor node (message source).
    pub j: usize,
    pub seq_dist: SeqDist,
    pub base: BaseTuple,
    pub euler: Option<EulerTriple>,
    /// Some component was undefined and set by convention.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeGeometry {
    pub index: usize,
    pub aa: AminoAcid,
    pub terminus: bool,
    pub chi: Option<ChiSet>,
}

/// Geometric representation of a graph at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct GrSet {
    pub level: Level,
    pub cutoff: f64,
    pub nodes: Vec<NodeGeometry>,
    /// Same order as the graph's edges, i.e. by `(i, j)`.
    pub edges: Vec<EdgeGeometry>,
    pub issues: Vec<GeomIssue>,
}

impl GrSet {
    /// Scalars per edge: 4 base components plus 3 Euler angles when present.
    pub fn edge_arity(&self) -> usize {
        match self.level {
            Level::AminoAcid => 4,
            Level::Backbone | Level::AllAtom => 7,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.issues.is_empty()
    }
}

/// The representation matching the graph's own level.
pub fn geometric_representation(graph: &ProteinGraph) -> Result<GrSet, GeometryError> {
    match graph.level {
        Level::AminoAcid => gr_base(graph),
        Level::Backbone => gr_backbone(graph),
        Level::AllAtom => gr_allatom(graph),
    }
}
