//! Executable completeness checks.
//!
//! A representation is complete when two structures share it exactly iff they
//! differ by a proper rigid motion. The "if" half is fuzzed with random
//! motions ([`invariance_fuzz`]); the "only if" half is checked by rebuilding
//! coordinates from the representation alone ([`reconstruct`]) and
//! superposing them on the input ([`kabsch_align`]).

mod kabsch;
mod reconstruct;

pub use kabsch::{kabsch_align, rmsd};
pub use reconstruct::{
    extract_templates, reconstruct, verify_reconstruction, Gauge, ReconReport, Reconstruction,
    ResidueTemplate,
};

use nalgebra::{Matrix3, Quaternion, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::frame::{angle_distance, Vec3};
use crate::geometry::{geometric_representation, GeometryError, GrSet};
use crate::graph::{build_graph, GraphError, Level};
use crate::structure::Structure;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompletenessError {
    #[error("representations are not comparable: {0}")]
    SchemaMismatch(String),
    #[error("point sets must have equal length >= 3 and not be coincident")]
    DegeneratePointSet,
    #[error("graph is disconnected; node {0} is unreachable from node 0")]
    DisconnectedGraph(usize),
    #[error("gauge needs three mutually linked nodes at the start of the first chain")]
    InsufficientGauge,
    #[error("no well-defined placement step reaches node {node}")]
    DegenerateStep { node: usize },
    #[error("no residue template for node {0}")]
    MissingTemplate(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `x ↦ R·x + t` with `R` a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix3<f64>,
    pub translation: Vec3,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion {
            rotation: Matrix3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn translation(t: Vec3) -> Self {
        RigidMotion {
            rotation: Matrix3::identity(),
            translation: t,
        }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: other.rotation * self.rotation,
            translation: other.rotation * self.translation + other.translation,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let rt = self.rotation.transpose();
        RigidMotion {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }
}

/// Uniform random rotation (unit quaternion from three uniforms) and a
/// translation with components in [−100, 100] Å. Deterministic per seed.
pub fn sample_se3(seed: u64) -> RigidMotion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let q = Quaternion::new(b * (tau * u3).cos(), a * (tau * u2).sin(), a * (tau * u2).cos(), b * (tau * u3).sin());
    let rotation = *UnitQuaternion::from_quaternion(q).to_rotation_matrix().matrix();
    let translation = Vec3::from_fn(|_, _| rng.random_range(-100.0..=100.0));
    RigidMotion {
        rotation,
        translation,
    }
}

pub fn apply_se3(structure: &Structure, motion: &RigidMotion) -> Structure {
    let mut out = structure.clone();
    for atom in out.atoms_mut() {
        atom.position = motion.apply(&atom.position);
    }
    out
}

/// Reflection through the yz-plane (`x ↦ −x`), an improper motion.
pub fn mirror(structure: &Structure) -> Structure {
    let mut out = structure.clone();
    for atom in out.atoms_mut() {
        atom.position.x = -atom.position.x;
    }
    out
}

/// Largest component-wise difference between two representations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GrDistance {
    pub max: f64,
    /// Over distances, by absolute difference.
    pub linear: f64,
    /// Over angles, by circle distance.
    pub angular: f64,
}

impl GrDistance {
    fn linear(&mut self, a: f64, b: f64) {
        self.linear = self.linear.max((a - b).abs());
        self.max = self.max.max(self.linear);
    }

    fn angle(&mut self, a: f64, b: f64) {
        self.angular = self.angular.max(angle_distance(a, b));
        self.max = self.max.max(self.angular);
    }
}

pub fn gr_distance(a: &GrSet, b: &GrSet) -> Result<GrDistance, CompletenessError> {
    let mismatch = |what: String| Err(CompletenessError::SchemaMismatch(what));
    if a.level != b.level {
        return mismatch(format!("levels {} and {}", a.level, b.level));
    }
    if a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        return mismatch(format!(
            "{}/{} nodes/edges vs {}/{}",
            a.nodes.len(),
            a.edges.len(),
            b.nodes.len(),
            b.edges.len()
        ));
    }
    let mut dist = GrDistance::default();
    for (ea, eb) in a.edges.iter().zip(&b.edges) {
        if (ea.i, ea.j) != (eb.i, eb.j) {
            return mismatch(format!("edge ({}, {}) vs ({}, {})", ea.i, ea.j, eb.i, eb.j));
        }
        dist.linear(ea.base.d, eb.base.d);
        for (x, y) in ea.base.angles().iter().zip(eb.base.angles()) {
            dist.angle(*x, y);
        }
        match (&ea.euler, &eb.euler) {
            (Some(ta), Some(tb)) => {
                for (x, y) in ta.angles().iter().zip(tb.angles()) {
                    dist.angle(*x, y);
                }
            }
            (None, None) => {}
            _ => return mismatch(format!("Euler triple presence differs on edge ({}, {})", ea.i, ea.j)),
        }
    }
    for (na, nb) in a.nodes.iter().zip(&b.nodes) {
        match (&na.chi, &nb.chi) {
            (Some(ca), Some(cb)) if ca.mask == cb.mask => {
                for (x, y) in ca.angles.iter().zip(&cb.angles) {
                    dist.angle(*x, *y);
                }
            }
            (None, None) => {}
            _ => return mismatch(format!("side-chain torsions differ in presence at node {}", na.index)),
        }
    }
    Ok(dist)
}

/// Worst case over a batch of random motions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzReport {
    pub trials: usize,
    pub worst: GrDistance,
    pub worst_seed: u64,
}

/// Compares the representation of `structure` against that of `T(structure)`
/// for `T = sample_se3(seed)` over every seed in `seeds`, in parallel.
pub fn invariance_fuzz(
    structure: &Structure,
    level: Level,
    cutoff: f64,
    seeds: std::ops::Range<u64>,
) -> Result<FuzzReport, CompletenessError> {
    let reference = geometric_representation(&build_graph(structure, level, cutoff)?)?;
    let trials = (seeds.end.saturating_sub(seeds.start)) as usize;
    let results: Vec<(u64, GrDistance)> = seeds
        .into_par_iter()
        .map(|seed| {
            let moved = apply_se3(structure, &sample_se3(seed));
            let gr = geometric_representation(&build_graph(&moved, level, cutoff)?)?;
            Ok((seed, gr_distance(&reference, &gr)?))
        })
        .collect::<Result<_, CompletenessError>>()?;
    let (worst_seed, worst) = results
        .into_iter()
        .fold((0, GrDistance::default()), |acc, cur| if cur.1.max > acc.1.max { cur } else { acc });
    Ok(FuzzReport {
        trials,
        worst,
        worst_seed,
    })
}
