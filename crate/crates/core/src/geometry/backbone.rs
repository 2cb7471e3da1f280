//! Backbone frames, the Euler triple between two frames, and backbone torsions.
//!
//! Convention: with `n = z_i × z_j`, τ¹ is the signed angle from `x_i` to `n`
//! about `z_i`, τ² the angle from `z_i` to `z_j` (in [0, π]) and τ³ the signed
//! angle from `n` to `x_j` about `z_j`. With `M = M₁(τ¹)·M₂(τ²)·M₃(τ³)`
//! (z-, x-, z-rotations) the axes of `j` are
//!
//! ```text
//! [x_j y_j z_j] = [x_i y_i z_i] · M        (axes as columns)
//! ```
//!
//! i.e. column `k` of `M` is axis `k` of frame `j` written in frame `i`.
//!
//! Swapping the frames gives `(π − τ³, τ², π − τ¹)`.

use nalgebra::Matrix3;

use crate::frame::{dihedral, signed_angle, unit, unit_cross, unsigned_angle, wrap_angle, Frame, Vec3};
use crate::graph::{Level, ProteinGraph};
use crate::structure::{ResidueId, Structure};

use super::{gr_base, GeomIssue, GeometryError, GrSet, Site};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerTriple {
    pub tau1: f64,
    pub tau2: f64,
    pub tau3: f64,
}

impl EulerTriple {
    pub fn angles(&self) -> [f64; 3] {
        [self.tau1, self.tau2, self.tau3]
    }
}

/// Frame from the rigid N–Cα–C triangle: `y ∝ N − Cα`, `z ∝ (C − Cα) × y`,
/// `x = y × z`, origin at Cα.
pub fn backbone_frame(n: &Vec3, ca: &Vec3, c: &Vec3) -> Result<Frame, GeometryError> {
    let y_raw = n - ca;
    let t = c - ca;
    let z = unit_cross(&t, &y_raw).ok_or(GeometryError::CollinearBackbone)?;
    let y = unit(&y_raw).ok_or(GeometryError::CollinearBackbone)?;
    Ok(Frame {
        origin: *ca,
        x: y.cross(&z),
        y,
        z,
    })
}

/// Euler triple taking frame `i` to frame `j`.
///
/// When the z axes are parallel (`|z_i × z_j| < 1e-8`) the line of nodes is
/// undefined; the fallback `n := x_i`, `τ¹ = 0`, `τ² ∈ {0, π}`, `τ³` = angle
/// from `x_i` to `x_j` about `z_j` is returned inside
/// [`GeometryError::ParallelPlanes`]. It still satisfies the frame relation.
pub fn euler_triple(fi: &Frame, fj: &Frame) -> Result<EulerTriple, GeometryError> {
    let tau2 = unsigned_angle(&fi.z, &fj.z);
    match unit_cross(&fi.z, &fj.z) {
        Some(n) => Ok(EulerTriple {
            tau1: signed_angle(&fi.x, &n, &fi.z),
            tau2,
            tau3: signed_angle(&n, &fj.x, &fj.z),
        }),
        None => {
            let tau2 = if fi.z.dot(&fj.z) > 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            };
            Err(GeometryError::ParallelPlanes {
                fallback: EulerTriple {
                    tau1: 0.0,
                    tau2,
                    tau3: signed_angle(&fi.x, &fj.x, &fj.z),
                },
            })
        }
    }
}

/// `M = M₁ M₂ M₃` with M₁, M₃ rotations about z by τ¹, τ³ and M₂ about x by τ².
pub fn rotation_from_euler(t: &EulerTriple) -> Matrix3<f64> {
    let (s1, c1) = t.tau1.sin_cos();
    let (s2, c2) = t.tau2.sin_cos();
    let (s3, c3) = t.tau3.sin_cos();
    #[rustfmt::skip]
    let m1 = Matrix3::new(
        c1, -s1, 0.0,
        s1,  c1, 0.0,
        0.0, 0.0, 1.0,
    );
    #[rustfmt::skip]
    let m2 = Matrix3::new(
        1.0, 0.0, 0.0,
        0.0, c2, -s2,
        0.0, s2,  c2,
    );
    #[rustfmt::skip]
    let m3 = Matrix3::new(
        c3, -s3, 0.0,
        s3,  c3, 0.0,
        0.0, 0.0, 1.0,
    );
    m1 * m2 * m3
}

/// Axes of frame `j` from frame `i` and their Euler triple; origin supplied.
pub fn propagate_frame(fi: &Frame, t: &EulerTriple, origin: Vec3) -> Frame {
    let axes = fi.axes_columns() * rotation_from_euler(t);
    Frame::from_columns(origin, &axes)
}

/// Backbone representation: base tuples plus one Euler triple per edge.
pub fn gr_backbone(graph: &ProteinGraph) -> Result<GrSet, GeometryError> {
    if graph.level == Level::AminoAcid {
        return Err(GeometryError::LevelMismatch {
            needed: Level::Backbone,
            got: graph.level,
        });
    }
    let mut gr = gr_base(graph)?;
    let frames: Vec<Result<Frame, GeometryError>> = (0..graph.len())
        .map(|k| {
            let r = &graph.positions[k];
            backbone_frame(&r[0].position, &r[1].position, &r[2].position)
        })
        .collect();
    for (k, f) in frames.iter().enumerate() {
        if let Err(e) = f {
            gr.issues.push(GeomIssue {
                site: Site::Node(k),
                error: e.clone(),
            });
        }
    }
    for edge in &mut gr.edges {
        let (triple, problem) = match (&frames[edge.i], &frames[edge.j]) {
            (Ok(fi), Ok(fj)) => match euler_triple(fi, fj) {
                Ok(t) => (t, None),
                Err(GeometryError::ParallelPlanes { fallback }) => (
                    fallback,
                    Some(GeometryError::ParallelPlanes { fallback }),
                ),
                Err(e) => unreachable!("euler_triple only reports parallel planes: {e}"),
            },
            (Err(e), _) | (_, Err(e)) => (
                EulerTriple {
                    tau1: 0.0,
                    tau2: 0.0,
                    tau3: 0.0,
                },
                Some(e.clone()),
            ),
        };
        edge.euler = Some(triple);
        if let Some(error) = problem {
            edge.degenerate = true;
            gr.issues.push(GeomIssue {
                site: Site::Edge {
                    i: edge.i,
                    j: edge.j,
                },
                error,
            });
        }
    }
    Ok(gr)
}

/// Backbone torsions of one residue; `None` where the window leaves the chain.
///
/// * `phi` (rotation about N–Cα): C₋₁, N, Cα, C
/// * `psi` (about Cα–C): N, Cα, C, N₊₁
/// * `omega` (about C–N₊₁): Cα, C, N₊₁, Cα₊₁
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackboneTorsions {
    pub phi: Option<f64>,
    pub psi: Option<f64>,
    pub omega: Option<f64>,
}

impl BackboneTorsions {
    pub fn defined(&self) -> usize {
        [self.phi, self.psi, self.omega]
            .iter()
            .filter(|a| a.is_some())
            .count()
    }
}

/// Per chain, per residue backbone torsions.
pub fn backbone_torsions(structure: &Structure) -> Result<Vec<Vec<BackboneTorsions>>, GeometryError> {
    structure
        .chains
        .iter()
        .map(|chain| {
            let bb: Vec<[Vec3; 3]> = chain
                .residues
                .iter()
                .map(|r| match (r.position("N"), r.ca(), r.position("C")) {
                    (Some(n), Some(ca), Some(c)) => Ok([n, ca, c]),
                    _ => Err(GeometryError::MissingBackboneAtom(ResidueId {
                        chain: chain.id.clone(),
                        seq_index: r.seq_index,
                    })),
                })
                .collect::<Result<_, _>>()?;
            let tors = |p: [&Vec3; 4]| dihedral(p[0], p[1], p[2], p[3]).ok().map(wrap_angle);
            Ok((0..bb.len())
                .map(|k| {
                    let [n, ca, c] = &bb[k];
                    let prev = k.checked_sub(1).map(|p| &bb[p]);
                    let next = bb.get(k + 1);
                    BackboneTorsions {
                        phi: prev.and_then(|p| tors([&p[2], n, ca, c])),
                        psi: next.and_then(|q| tors([n, ca, c, &q[0]])),
                        omega: next.and_then(|q| tors([ca, c, &q[0], &q[1]])),
                    }
                })
                .collect())
        })
        .collect()
}
