//! Message counts for 1-hop versus 2-hop geometry, and a small timing harness.

use std::time::Instant;

use crate::geometry::geometric_representation;
use crate::graph::{build_graph, degree_stats, Level, ProteinGraph, Topology, DEFAULT_CUTOFF};
use crate::structure::Structure;
use crate::synthetic::synthetic_chain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// One geometry tuple per directed edge.
    OneHop,
    /// One per center and ordered pair of distinct neighbors.
    TwoHop,
}

/// `one_hop = |E|`, `two_hop = Σ_i deg(i)·(deg(i) − 1)`.
pub fn count_messages(topology: &Topology, scheme: Scheme) -> u64 {
    (0..topology.len())
        .map(|i| {
            let d = topology.degree(i) as u64;
            match scheme {
                Scheme::OneHop => d,
                Scheme::TwoHop => d * d.saturating_sub(1),
            }
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MessageCounts {
    pub one_hop: u64,
    pub two_hop: u64,
}

impl MessageCounts {
    pub fn of(topology: &Topology) -> Self {
        MessageCounts {
            one_hop: count_messages(topology, Scheme::OneHop),
            two_hop: count_messages(topology, Scheme::TwoHop),
        }
    }

    pub fn ratio(&self) -> Option<f64> {
        (self.one_hop > 0).then(|| self.two_hop as f64 / self.one_hop as f64)
    }
}

/// Scalars needed for every edge's relative backbone rotation: 3 per edge
/// with Euler triples, versus three torsions per residue along the chain
/// between the two ends (`3·(|j − i| + 1)`) when composing bond rotations.
/// Cross-chain edges have no connecting torsion path and are skipped in the
/// second count.
pub fn torsion_scalars(topology: &Topology) -> (usize, usize) {
    let euler = 3 * topology.edges.len();
    let torsions = topology
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = (&topology.nodes[e.dst], &topology.nodes[e.src]);
            (a.chain == b.chain).then(|| 3 * (a.pos_in_chain.abs_diff(b.pos_in_chain) + 1))
        })
        .sum();
    (euler, torsions)
}

/// `graph` with its edges replaced by a `k`-regular ring lattice over the
/// same nodes.
pub fn regular_graph(graph: &ProteinGraph, k: usize) -> ProteinGraph {
    let ring = Topology::ring_lattice(graph.len(), k);
    let edges = ring
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (&graph.topology.nodes[e.dst], &graph.topology.nodes[e.src]);
            crate::graph::Edge {
                seq_dist: crate::graph::SeqDist::intra(b.pos_in_chain as i64 - a.pos_in_chain as i64),
                ..*e
            }
        })
        .collect();
    ProteinGraph {
        topology: Topology::new(graph.topology.nodes.clone(), edges),
        ..graph.clone()
    }
}

/// Radius whose graph has mean degree closest to `k`, by bisection on the
/// (monotone) mean degree.
pub fn cutoff_for_mean_degree(structure: &Structure, k: f64) -> f64 {
    let mean = |c: f64| {
        build_graph(structure, Level::AminoAcid, c)
            .map(|g| degree_stats(&g.topology).mean)
            .unwrap_or(0.0)
    };
    let (mut lo, mut hi) = (1e-3, 1.0);
    while mean(hi) < k && hi < 1e4 {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) < k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (mean(lo) - k).abs() < (mean(hi) - k).abs() {
        lo
    } else {
        hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub level: Level,
    pub n: usize,
    pub cutoff: f64,
    pub mean_degree: f64,
    pub counts: MessageCounts,
    /// Wall time of the 1-hop representation.
    pub gr_seconds: f64,
}

/// One row per level for a synthetic chain of `n` residues. With `regular`
/// the edges form a `k`-regular ring lattice; otherwise the radius is tuned
/// to give mean degree ≈ `k`. `n = 0` gives no rows.
pub fn run_bench(n: usize, k: usize, regular: bool, seed: u64) -> Vec<BenchRow> {
    if n == 0 {
        return Vec::new();
    }
    let structure = synthetic_chain(n, seed);
    let cutoff = if regular {
        DEFAULT_CUTOFF
    } else {
        cutoff_for_mean_degree(&structure, k as f64)
    };
    Level::ALL
        .iter()
        .map(|&level| {
            let mut graph = build_graph(&structure, level, cutoff).expect("synthetic chains satisfy every level");
            if regular {
                graph = regular_graph(&graph, k);
            }
            let start = Instant::now();
            let gr = geometric_representation(&graph);
            let gr_seconds = start.elapsed().as_secs_f64();
            if let Err(e) = gr {
                log::warn!("{level}: representation failed: {e}");
            }
            BenchRow {
                level,
                n,
                cutoff,
                mean_degree: degree_stats(&graph.topology).mean,
                counts: MessageCounts::of(&graph.topology),
                gr_seconds,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_and_complete_counts() {
        let ring = Topology::ring_lattice(10, 2);
        assert_eq!(MessageCounts::of(&ring), MessageCounts { one_hop: 20, two_hop: 20 });
        let complete = Topology::ring_lattice(5, 4);
        assert_eq!(MessageCounts::of(&complete), MessageCounts { one_hop: 20, two_hop: 60 });
        let empty = Topology::ring_lattice(4, 0);
        let c = MessageCounts::of(&empty);
        assert_eq!((c.one_hop, c.two_hop, c.ratio()), (0, 0, None));
    }

    #[test]
    fn regular_bench_ratio() {
        let rows = run_bench(100, 10, true, 0);
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(r.counts.ratio(), Some(9.0));
            assert_eq!(r.mean_degree, 10.0);
        }
        assert!(run_bench(0, 10, false, 0).is_empty());
    }

    #[test]
    fn euler_count_is_constant_per_edge() {
        let g = build_graph(&synthetic_chain(30, 1), Level::Backbone, 10.0).unwrap();
        let (euler, torsions) = torsion_scalars(&g.topology);
        assert_eq!(euler, 3 * g.edges().len());
        assert!(torsions >= 2 * euler);
    }

    #[test]
    fn tuned_cutoff_hits_target_degree() {
        let s = synthetic_chain(300, 4);
        let c = cutoff_for_mean_degree(&s, 20.0);
        let g = build_graph(&s, Level::AminoAcid, c).unwrap();
        assert!((degree_stats(&g.topology).mean - 20.0).abs() < 0.1);
    }
}
