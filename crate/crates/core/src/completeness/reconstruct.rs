//! Rebuilding coordinates from a geometric representation.
//!
//! Cα trace: the gauge pins node 0 at the origin, node 1 on +z and node 2 in
//! the xz half-plane (x > 0). Every other node `j` is then placed from an edge
//! `j → i` whose center `i` already has its frame anchors placed:
//!
//! ```text
//! r_j = r_i + d·(sinθ cosφ x_i + sinθ sinφ y_i + cosθ z_i)
//! ```
//!
//! When a center's side anchor is still missing (the start of a later chain),
//! its frame is recovered from the toward anchor plus the azimuth φ of another
//! placed neighbor; failing that, a node is placed from its distances to four
//! or more placed neighbors.
//!
//! Backbone: frames spread from the seed frame along a breadth-first spanning
//! tree, `F_j = F_i · M(τ¹, τ², τ³)`. The Euler triples only fix frames
//! relative to each other, so the seed frame's orientation inside node 0's
//! Cα frame is part of the gauge.
//!
//! All-atom: residue templates are stored with every defined χ set to 0 and
//! re-rotated about each χ axis before placement.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector, Matrix3};

use crate::chemistry::{chi_quadruples, AminoAcid};
use crate::frame::{dihedral, rotate_about, unit, Frame, Vec3};
use crate::geometry::{
    backbone_frame, frame_from_anchors, geometric_representation, propagate_frame, ChiSet,
    GeometryError, GrSet, Site,
};
use crate::graph::{Level, ProteinGraph, Topology};
use crate::structure::Atom;

use super::{kabsch_align, CompletenessError, RigidMotion};

/// Residue atoms in the residue's own backbone frame, side-chain torsions zeroed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueTemplate {
    pub aa: AminoAcid,
    pub atoms: Vec<(String, Vec3)>,
}

/// Rotates `atoms` (name, position) so that each defined χ^k equals `target(k)`.
fn set_chi(aa: AminoAcid, atoms: &mut [(String, Vec3)], mut target: impl FnMut(usize, f64) -> Option<f64>) {
    for (k, quad) in chi_quadruples(aa).iter().enumerate() {
        let find = |atoms: &[(String, Vec3)], n: &str| atoms.iter().find(|a| a.0 == n).map(|a| a.1);
        let pts: Option<Vec<Vec3>> = quad.iter().map(|n| find(atoms, n)).collect();
        let Some(p) = pts else { continue };
        let Ok(current) = dihedral(&p[0], &p[1], &p[2], &p[3]) else { continue };
        let Some(goal) = target(k, current) else { continue };
        let axis = p[2] - p[1];
        let distal = aa.distal_atoms(quad[2]);
        for (name, pos) in atoms.iter_mut() {
            if distal.contains(&name.as_str()) {
                *pos = rotate_about(pos, &p[2], &axis, goal - current);
            }
        }
    }
}

/// Per-node templates taken from the graph's own coordinates. Empty at the
/// amino-acid level, where only Cα positions are rebuilt.
pub fn extract_templates(graph: &ProteinGraph) -> Result<Vec<ResidueTemplate>, CompletenessError> {
    if graph.level == Level::AminoAcid {
        return Ok(Vec::new());
    }
    graph
        .positions
        .iter()
        .zip(&graph.topology.nodes)
        .map(|(rows, node)| {
            let frame = backbone_frame(&rows[0].position, &rows[1].position, &rows[2].position)?;
            let mut atoms: Vec<(String, Vec3)> = rows
                .iter()
                .map(|a| (a.name.clone(), frame.to_local(&a.position)))
                .collect();
            if graph.level == Level::AllAtom {
                set_chi(node.aa, &mut atoms, |_, _| Some(0.0));
            }
            Ok(ResidueTemplate { aa: node.aa, atoms })
        })
        .collect()
}

/// Fixes the global rigid motion left free by the representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    /// Origin, +z and xz half-plane nodes.
    pub seeds: [usize; 3],
    /// Backbone frame axes of `seeds[0]` (as columns) in that node's Cα frame.
    pub seed_orientation: Option<Matrix3<f64>>,
}

impl Gauge {
    pub fn from_graph(graph: &ProteinGraph) -> Result<Gauge, CompletenessError> {
        let topo = &graph.topology;
        if topo.len() < 3 || topo.chain_len(0) < 3 {
            return Err(CompletenessError::InsufficientGauge);
        }
        let seed_orientation = match graph.level {
            Level::AminoAcid => None,
            _ => {
                let ca = frame_from_anchors(&graph.ca(0), &graph.ca(1), &graph.ca(2))
                    .map_err(|_| CompletenessError::InsufficientGauge)?;
                let r = &graph.positions[0];
                let bb = backbone_frame(&r[0].position, &r[1].position, &r[2].position)?;
                Some(ca.axes_columns().transpose() * bb.axes_columns())
            }
        };
        Ok(Gauge {
            seeds: [0, 1, 2],
            seed_orientation,
        })
    }

    pub fn describe(&self) -> String {
        let [a, b, c] = self.seeds;
        let mut s = format!("node {a} at origin, node {b} on +z, node {c} in xz half-plane (x > 0)");
        if self.seed_orientation.is_some() {
            s.push_str(&format!("; backbone frame of node {a} fixed in its Cα frame"));
        }
        s
    }
}

/// Coordinates rebuilt from a representation, in the gauge's coordinate system.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub level: Level,
    pub ca: Vec<Vec3>,
    /// Backbone frames, at backbone and all-atom levels.
    pub frames: Option<Vec<Frame>>,
    /// Placed atoms per node (just Cα at the amino-acid level).
    pub atoms: Vec<Vec<Atom>>,
}

fn connected_from_zero(topology: &Topology) -> Result<(), CompletenessError> {
    let n = topology.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for e in topology.incoming(i) {
            if !seen[e.src] {
                seen[e.src] = true;
                queue.push_back(e.src);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(k) => Err(CompletenessError::DisconnectedGraph(k)),
        None => Ok(()),
    }
}

fn place_trace(gr: &GrSet, topology: &Topology, gauge: &Gauge) -> Result<Vec<Vec3>, CompletenessError> {
    let n = topology.len();
    let [s0, s1, s2] = gauge.seeds;
    let edge = |dst: usize, src: usize| topology.edge_index(dst, src).map(|k| &gr.edges[k]);
    let (Some(e01), Some(e02)) = (edge(s0, s1), edge(s0, s2)) else {
        return Err(CompletenessError::InsufficientGauge);
    };
    let theta = e02.base.theta;
    if theta.sin() < 1e-8 {
        return Err(CompletenessError::InsufficientGauge);
    }
    let mut pos: Vec<Option<Vec3>> = vec![None; n];
    pos[s0] = Some(Vec3::zeros());
    pos[s1] = Some(Vec3::new(0.0, 0.0, e01.base.d));
    pos[s2] = Some(e02.base.d * Vec3::new(theta.sin(), 0.0, theta.cos()));

    let mut frames: Vec<Option<Frame>> = vec![None; n];
    let mut frame_at = |i: usize, pos: &[Option<Vec3>]| -> Option<Frame> {
        if frames[i].is_none() {
            let a = topology.anchors(i)?;
            let (r, t) = (pos[i]?, pos[a.toward]?);
            frames[i] = match pos[a.side] {
                Some(s) => frame_from_anchors(&r, &t, &s).ok(),
                None => infer_frame(gr, topology, i, a.toward, pos),
            };
        }
        frames[i]
    };

    let mut remaining = n - 3;
    while remaining > 0 {
        let mut progress = false;
        for j in 0..n {
            if pos[j].is_some() {
                continue;
            }
            let mut best: Option<(f64, Vec3)> = None;
            for e in topology.incoming(j) {
                let i = e.src;
                let Some(f) = frame_at(i, &pos) else { continue };
                let Some(k) = topology.edge_index(i, j) else { continue };
                let b = &gr.edges[k].base;
                if best.is_some_and(|(d, _)| d <= b.d) {
                    continue;
                }
                let (st, ct) = b.theta.sin_cos();
                let dir = st * b.phi.cos() * f.x + st * b.phi.sin() * f.y + ct * f.z;
                best = Some((b.d, f.origin + b.d * dir));
            }
            if best.is_none() {
                best = trilaterate(gr, topology, j, &pos).map(|p| (0.0, p));
            }
            if let Some((_, p)) = best {
                pos[j] = Some(p);
                remaining -= 1;
                progress = true;
            }
        }
        if !progress {
            let node = pos.iter().position(|p| p.is_none()).unwrap();
            return Err(CompletenessError::DegenerateStep { node });
        }
    }
    Ok(pos.into_iter().map(Option::unwrap).collect())
}

/// Frame of a placed node whose `toward` anchor is placed but whose `side`
/// anchor is not: z is known, and the azimuth φ of any placed off-axis
/// neighbor fixes the rotation about it.
fn infer_frame(gr: &GrSet, topology: &Topology, i: usize, toward: usize, pos: &[Option<Vec3>]) -> Option<Frame> {
    let r = pos[i]?;
    let z = unit(&(pos[toward]? - r))?;
    let (_, u, phi) = topology
        .incoming(i)
        .iter()
        .filter(|e| e.src != toward)
        .filter_map(|e| {
            let p = pos[e.src]?;
            let b = &gr.edges[topology.edge_index(i, e.src)?].base;
            let v = unit(&(p - r))?;
            let perp = v - v.dot(&z) * z;
            Some((perp.norm(), perp, b.phi))
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .filter(|c| c.0 > 1e-3)?;
    let x = rotate_about(&unit(&u)?, &Vec3::zeros(), &z, -phi);
    Some(Frame {
        origin: r,
        x,
        y: z.cross(&x),
        z,
    })
}

/// Position of `j` from its distances to at least four placed, non-coplanar
/// neighbors. Used when no placed neighbor has a resolvable frame, e.g. for
/// the first residues of a second chain.
fn trilaterate(gr: &GrSet, topology: &Topology, j: usize, pos: &[Option<Vec3>]) -> Option<Vec3> {
    let known: Vec<(Vec3, f64)> = topology
        .incoming(j)
        .iter()
        .filter_map(|e| Some((pos[e.src]?, gr.edges[topology.edge_index(j, e.src)?].base.d)))
        .collect();
    if known.len() < 4 {
        return None;
    }
    let (p0, d0) = known[0];
    let rows = known.len() - 1;
    let mut a = DMatrix::zeros(rows, 3);
    let mut b = DVector::zeros(rows);
    for (r, (p, d)) in known[1..].iter().enumerate() {
        let diff = 2.0 * (p - p0);
        a.set_row(r, &diff.transpose());
        b[r] = d0 * d0 - d * d + p.norm_squared() - p0.norm_squared();
    }
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    if sv.min() < 1e-3 * sv.max() {
        return None;
    }
    let x = svd.solve(&b, 1e-12).ok()?;
    let x = Vec3::new(x[0], x[1], x[2]);
    let consistent = known.iter().all(|(p, d)| ((x - p).norm() - d).abs() < 1e-6);
    consistent.then_some(x)
}

fn propagate_frames(
    gr: &GrSet,
    topology: &Topology,
    gauge: &Gauge,
    ca: &[Vec3],
) -> Result<Vec<Frame>, CompletenessError> {
    let n = topology.len();
    let [s0, s1, s2] = gauge.seeds;
    let orientation = gauge.seed_orientation.ok_or(CompletenessError::InsufficientGauge)?;
    let ca_seed = frame_from_anchors(&ca[s0], &ca[s1], &ca[s2]).map_err(|_| CompletenessError::InsufficientGauge)?;
    let seed = Frame::from_columns(ca[s0], &(ca_seed.axes_columns() * orientation));

    let mut broken = vec![false; n];
    for issue in &gr.issues {
        if let (Site::Node(k), GeometryError::CollinearBackbone) = (issue.site, &issue.error) {
            broken[k] = true;
        }
    }
    let mut frames: Vec<Option<Frame>> = vec![None; n];
    frames[s0] = Some(seed);
    let mut queue = VecDeque::from([s0]);
    while let Some(i) = queue.pop_front() {
        let fi = frames[i].unwrap();
        for e in topology.incoming(i) {
            let j = e.src;
            if frames[j].is_some() || broken[j] {
                continue;
            }
            let k = topology.edge_index(i, j).unwrap();
            let Some(t) = gr.edges[k].euler else { continue };
            frames[j] = Some(propagate_frame(&fi, &t, ca[j]));
            queue.push_back(j);
        }
    }
    frames
        .into_iter()
        .enumerate()
        .map(|(k, f)| f.ok_or(CompletenessError::DegenerateStep { node: k }))
        .collect()
}

/// Rebuilds coordinates from `gr` and `topology` alone, plus the gauge and
/// (above the amino-acid level) per-residue templates.
pub fn reconstruct(
    gr: &GrSet,
    topology: &Topology,
    gauge: &Gauge,
    templates: &[ResidueTemplate],
) -> Result<Reconstruction, CompletenessError> {
    let n = topology.len();
    if gr.nodes.len() != n || gr.edges.len() != topology.edges.len() {
        return Err(CompletenessError::SchemaMismatch(
            "representation does not match the topology".into(),
        ));
    }
    if n < 3 || topology.chain_len(0) < 3 {
        return Err(CompletenessError::InsufficientGauge);
    }
    connected_from_zero(topology)?;
    let ca = place_trace(gr, topology, gauge)?;
    if gr.level == Level::AminoAcid {
        let atoms = ca.iter().map(|p| vec![Atom::new("CA", *p)]).collect();
        return Ok(Reconstruction {
            level: gr.level,
            ca,
            frames: None,
            atoms,
        });
    }
    let frames = propagate_frames(gr, topology, gauge, &ca)?;
    let mut atoms = Vec::with_capacity(n);
    for k in 0..n {
        let template = templates.get(k).ok_or(CompletenessError::MissingTemplate(k))?;
        let mut local = template.atoms.clone();
        if gr.level == Level::AllAtom {
            let chi = gr.nodes[k].chi.clone().unwrap_or_else(ChiSet::default);
            set_chi(template.aa, &mut local, |idx, _| chi.get(idx));
        }
        atoms.push(
            local
                .iter()
                .map(|(name, p)| Atom::new(name.clone(), frames[k].to_world(p)))
                .collect(),
        );
    }
    Ok(Reconstruction {
        level: gr.level,
        ca,
        frames: Some(frames),
        atoms,
    })
}

/// Outcome of a representation → coordinates → superposition round trip.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconReport {
    pub level: Level,
    pub recovered: Reconstruction,
    /// Motion taking the recovered coordinates onto the input.
    pub alignment: RigidMotion,
    pub aligned_rmsd: f64,
    pub atoms_compared: usize,
    /// Max elementwise backbone-frame axis error after alignment.
    pub frame_error: Option<f64>,
    pub gauge: Gauge,
    pub tolerance: f64,
    pub verdict: bool,
}

/// Featurizes `graph`, rebuilds it from the representation and superposes the
/// result on the original coordinates.
pub fn verify_reconstruction(graph: &ProteinGraph, tolerance: f64) -> Result<ReconReport, CompletenessError> {
    let gr = geometric_representation(graph)?;
    let templates = extract_templates(graph)?;
    let gauge = Gauge::from_graph(graph)?;
    let recovered = reconstruct(&gr, &graph.topology, &gauge, &templates)?;

    let mut rec_pts = Vec::new();
    let mut true_pts = Vec::new();
    for (k, atoms) in recovered.atoms.iter().enumerate() {
        for a in atoms {
            let truth = graph
                .row(k, &a.name)
                .expect("templates carry only atoms of the graph rows");
            rec_pts.push(a.position);
            true_pts.push(truth);
        }
    }
    let (alignment, aligned_rmsd) = kabsch_align(&rec_pts, &true_pts)?;
    let frame_error = match &recovered.frames {
        Some(frames) => {
            let mut worst: f64 = 0.0;
            for (k, f) in frames.iter().enumerate() {
                let r = &graph.positions[k];
                let truth = backbone_frame(&r[0].position, &r[1].position, &r[2].position)?;
                let moved = alignment.rotation * f.axes_columns();
                worst = worst.max((moved - truth.axes_columns()).amax());
            }
            Some(worst)
        }
        None => None,
    };
    Ok(ReconReport {
        level: graph.level,
        atoms_compared: rec_pts.len(),
        recovered,
        alignment,
        aligned_rmsd,
        frame_error,
        gauge,
        tolerance,
        verdict: aligned_rmsd < tolerance,
    })
}
