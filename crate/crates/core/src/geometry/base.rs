//! Cα local frames and the per-edge base tuple `(d, θ, φ, τ)`.
//!
//! For a center `i` with unit vectors `p¹` (toward `i−1`), `p²` (toward `i+1`)
//! and `p_ij` (toward `j`):
//!
//! * `d = |r_j − r_i|`
//! * `θ` is the angle between `p¹` and `p_ij`
//! * `φ` is the signed angle from `p¹ × p²` to `p¹ × p_ij` about `p¹`, which is
//!   the azimuth of `p_ij` in the Cα frame of `i`
//! * `τ` is the signed angle from `p_ij × p_i` to `p_ij × p_j` about `p_ij`,
//!   where `p_i = p²` if `j` is the node `p¹` points at (otherwise `p¹`), and
//!   `p_j` is picked the same way at `j`.
//!
//! Termini substitute their anchors as described on [`Anchors`].

use crate::frame::{signed_angle, unit, unit_cross, unsigned_angle, Frame, Vec3};
use crate::graph::{Anchors, Edge, ProteinGraph, Topology};

use super::{EdgeGeometry, GeomIssue, GeometryError, GrSet, NodeGeometry, Site};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseTuple {
    pub d: f64,
    pub theta: f64,
    pub phi: f64,
    pub tau: f64,
}

impl BaseTuple {
    pub fn angles(&self) -> [f64; 3] {
        [self.theta, self.phi, self.tau]
    }
}

/// Local frame at `i` of a single chain's Cα trace.
///
/// z points toward `i−1`, y along `(r_{i−1} − r_i) × (r_{i+1} − r_i)`,
/// `x = y × z`. Chain ends use the substitute anchors of [`Anchors`].
pub fn ca_frame(positions: &[Vec3], i: usize) -> Result<Frame, GeometryError> {
    let len = positions.len();
    if i >= len || len < 3 {
        return Err(GeometryError::OutOfRange);
    }
    let (toward, side) = if i == 0 {
        (1, 2)
    } else if i + 1 == len {
        (i - 1, i - 2)
    } else {
        (i - 1, i + 1)
    };
    frame_from_anchors(&positions[i], &positions[toward], &positions[side])
}

pub(crate) fn frame_from_anchors(r: &Vec3, toward: &Vec3, side: &Vec3) -> Result<Frame, GeometryError> {
    let a = toward - r;
    let b = side - r;
    let y = unit_cross(&a, &b).ok_or(GeometryError::CollinearNeighbors)?;
    let z = unit(&a).ok_or(GeometryError::CollinearNeighbors)?;
    Ok(Frame {
        origin: *r,
        x: y.cross(&z),
        y,
        z,
    })
}

/// Per-node inputs to the base tuple.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeContext {
    pub r: Vec3,
    pub anchors: Option<Anchors>,
    /// Unit vectors toward the two anchors, when the frame is resolvable.
    pub p: Option<(Vec3, Vec3)>,
}

pub(crate) fn node_contexts(topology: &Topology, ca: &[Vec3]) -> (Vec<NodeContext>, Vec<GeomIssue>) {
    let mut issues = Vec::new();
    let ctx = (0..ca.len())
        .map(|i| {
            let anchors = topology.anchors(i);
            let p = anchors.and_then(|a| {
                let p1 = ca[a.toward] - ca[i];
                let p2 = ca[a.side] - ca[i];
                if unit_cross(&p1, &p2).is_none() {
                    issues.push(GeomIssue {
                        site: Site::Node(i),
                        error: GeometryError::CollinearNeighbors,
                    });
                    None
                } else {
                    Some((p1.normalize(), p2.normalize()))
                }
            });
            NodeContext {
                r: ca[i],
                anchors,
                p,
            }
        })
        .collect();
    (ctx, issues)
}

/// Computes the tuple for edge `j → i`. Components that cannot be defined are
/// set to 0 and reported alongside; only coincident nodes are fatal.
pub(crate) fn base_tuple_ctx(
    i: usize,
    j: usize,
    ci: &NodeContext,
    cj: &NodeContext,
) -> Result<(BaseTuple, Vec<GeometryError>), GeometryError> {
    let mut problems = Vec::new();
    let v = cj.r - ci.r;
    let d = v.norm();
    if !(d > 0.0) {
        return Err(GeometryError::CoincidentNodes(i, j));
    }
    let p_ij = v / d;
    let toward_i = ci.anchors.map(|a| a.toward);
    let toward_j = cj.anchors.map(|a| a.toward);

    let (mut theta, mut phi, mut tau) = (0.0, 0.0, 0.0);
    match ci.p {
        Some((p1, p2)) => {
            theta = unsigned_angle(&p1, &p_ij);
            if toward_i != Some(j) {
                let n1 = p1.cross(&p2);
                match unit_cross(&p1, &p_ij) {
                    Some(n2) => phi = signed_angle(&n1, &n2, &p1),
                    None => problems.push(GeometryError::DegeneratePlane),
                }
            }
        }
        None => problems.push(GeometryError::OutOfRange),
    }
    match (ci.p, cj.p) {
        (Some((pi1, pi2)), Some((pj1, pj2))) => {
            let p_i = if toward_i == Some(j) { pi2 } else { pi1 };
            let p_j = if toward_j == Some(i) { pj2 } else { pj1 };
            match (unit_cross(&p_ij, &p_i), unit_cross(&p_ij, &p_j)) {
                (Some(n3), Some(n4)) => tau = signed_angle(&n3, &n4, &p_ij),
                _ => problems.push(GeometryError::DegeneratePlane),
            }
        }
        (Some(_), None) => problems.push(GeometryError::OutOfRange),
        _ => {}
    }
    Ok((BaseTuple { d, theta, phi, tau }, problems))
}

/// Base tuple of one edge of `graph`, with any non-fatal problems.
pub fn base_tuple(
    graph: &ProteinGraph,
    edge: &Edge,
) -> Result<(BaseTuple, Vec<GeometryError>), GeometryError> {
    let ca: Vec<Vec3> = (0..graph.len()).map(|k| graph.ca(k)).collect();
    let anchor_ctx = |k: usize| {
        let anchors = graph.topology.anchors(k);
        let p = anchors.and_then(|a| {
            let p1 = ca[a.toward] - ca[k];
            let p2 = ca[a.side] - ca[k];
            unit_cross(&p1, &p2).map(|_| (p1.normalize(), p2.normalize()))
        });
        NodeContext {
            r: ca[k],
            anchors,
            p,
        }
    };
    base_tuple_ctx(edge.dst, edge.src, &anchor_ctx(edge.dst), &anchor_ctx(edge.src))
}

/// Base representation: one tuple per directed edge, at any level.
pub fn gr_base(graph: &ProteinGraph) -> Result<GrSet, GeometryError> {
    let ca: Vec<Vec3> = (0..graph.len()).map(|k| graph.ca(k)).collect();
    let (ctx, mut issues) = node_contexts(&graph.topology, &ca);
    let mut edges = Vec::with_capacity(graph.edges().len());
    for e in graph.edges() {
        let (base, problems) = base_tuple_ctx(e.dst, e.src, &ctx[e.dst], &ctx[e.src])?;
        let degenerate = !problems.is_empty();
        issues.extend(problems.into_iter().map(|error| GeomIssue {
            site: Site::Edge { i: e.dst, j: e.src },
            error,
        }));
        edges.push(EdgeGeometry {
            i: e.dst,
            j: e.src,
            seq_dist: e.seq_dist,
            base,
            euler: None,
            degenerate,
        });
    }
    let nodes = graph
        .topology
        .nodes
        .iter()
        .enumerate()
        .map(|(k, n)| NodeGeometry {
            index: k,
            aa: n.aa,
            terminus: graph.topology.is_terminus(k),
            chi: None,
        })
        .collect();
    Ok(GrSet {
        level: graph.level,
        cutoff: graph.cutoff,
        nodes,
        edges,
        issues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chemistry::AminoAcid;
    use crate::graph::{build_graph, Level};
    use crate::structure::{Atom, Chain, Residue, Structure};
    use std::f64::consts::FRAC_PI_2;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    fn chain(points: &[Vec3]) -> Structure {
        Structure {
            chains: vec![Chain {
                id: "A".into(),
                residues: points
                    .iter()
                    .enumerate()
                    .map(|(k, p)| Residue {
                        aa: AminoAcid::Ala,
                        seq_index: k as i32,
                        atoms: vec![Atom::new("CA", *p)],
                    })
                    .collect(),
            }],
        }
    }

    #[test]
    fn axis_aligned_frame_is_identity() {
        let pts = [v(0., 0., 1.), v(0., 0., 0.), v(1., 0., 0.)];
        let f = ca_frame(&pts, 1).unwrap();
        assert_eq!((f.x, f.y, f.z), (v(1., 0., 0.), v(0., 1., 0.), v(0., 0., 1.)));
        f.check_orthonormal().unwrap();
    }

    #[test]
    fn collinear_and_out_of_range() {
        let pts = [v(0., 0., 1.), v(0., 0., 0.), v(0., 0., -2.)];
        assert_eq!(ca_frame(&pts, 1), Err(GeometryError::CollinearNeighbors));
        assert_eq!(ca_frame(&pts, 3), Err(GeometryError::OutOfRange));
        assert_eq!(ca_frame(&pts[..2], 0), Err(GeometryError::OutOfRange));
    }

    #[test]
    fn terminus_frames() {
        let pts = [v(0., 0., 0.), v(0., 0., 1.), v(1., 0., 1.), v(1., 1., 1.)];
        let first = ca_frame(&pts, 0).unwrap();
        assert_eq!(first.z, v(0., 0., 1.));
        let last = ca_frame(&pts, 3).unwrap();
        assert_eq!(last.z, v(0., -1., 0.));
        first.check_orthonormal().unwrap();
        last.check_orthonormal().unwrap();
    }

    #[test]
    fn distance_and_orthogonal_theta() {
        let (t, _) = base_tuple_ctx(
            0,
            1,
            &NodeContext { r: v(0., 0., 0.), anchors: None, p: None },
            &NodeContext { r: v(3., 4., 0.), anchors: None, p: None },
        )
        .unwrap();
        assert_eq!(t.d, 5.0);

        let g = build_graph(&chain(&[v(0., 0., 1.), v(0., 0., 0.), v(1., 0., 0.)]), Level::AminoAcid, 10.0)
            .unwrap();
        let e = g.topology.find_edge(1, 2).unwrap();
        let (t, problems) = base_tuple(&g, e).unwrap();
        assert!((t.theta - FRAC_PI_2).abs() < 1e-15);
        assert!(problems.is_empty());
    }

    #[test]
    fn coincident_nodes_fatal() {
        let g = build_graph(&chain(&[v(0., 0., 0.), v(0., 0., 0.)]), Level::AminoAcid, 10.0).unwrap();
        assert_eq!(gr_base(&g), Err(GeometryError::CoincidentNodes(0, 1)));
    }

    #[test]
    fn short_chain_reports_undefined_angles() {
        let g = build_graph(&chain(&[v(0., 0., 0.), v(0., 0., 5.)]), Level::AminoAcid, 10.0).unwrap();
        let gr = gr_base(&g).unwrap();
        assert_eq!(gr.edges.len(), 2);
        assert_eq!(gr.edges[0].base.d, gr.edges[1].base.d);
        assert!(gr.edges.iter().all(|e| e.degenerate));
    }
}
