//! Radius-cutoff protein graphs.
//!
//! Nodes are residues in chain-then-sequence order. A directed edge `j → i`
//! exists iff the Cα atoms of `i` and `j` are closer than the cutoff, at every
//! level. Each node carries its position matrix for the chosen level.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chemistry::AminoAcid;
use crate::frame::Vec3;
use crate::structure::{Atom, ResidueId, Structure};

pub const DEFAULT_CUTOFF: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    AminoAcid,
    Backbone,
    AllAtom,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::AminoAcid, Level::Backbone, Level::AllAtom];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::AminoAcid => "amino_acid",
            Level::Backbone => "backbone",
            Level::AllAtom => "all_atom",
        }
    }

    /// Row of the Cα atom in a position matrix at this level.
    pub fn ca_row(self) -> usize {
        match self {
            Level::AminoAcid => 0,
            Level::Backbone | Level::AllAtom => 1,
        }
    }

    fn required_atoms(self) -> &'static [&'static str] {
        match self {
            Level::AminoAcid => &["CA"],
            Level::Backbone | Level::AllAtom => &["N", "CA", "C"],
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sequential distance `j − i` of an edge, clamped to ±[`SeqDist::CLAMP`],
/// with a separate bucket for residue pairs on different chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqDist {
    Intra(i32),
    CrossChain,
}

impl SeqDist {
    pub const CLAMP: i32 = 32;
    /// Number of distinct embedding buckets.
    pub const BUCKETS: usize = 2 * Self::CLAMP as usize + 2;
    /// Integer used for the cross-chain bucket in JSON output.
    pub const CROSS_CHAIN_CODE: i32 = Self::CLAMP + 1;

    pub fn intra(diff: i64) -> Self {
        SeqDist::Intra(diff.clamp(-(Self::CLAMP as i64), Self::CLAMP as i64) as i32)
    }

    pub fn bucket(self) -> usize {
        match self {
            SeqDist::Intra(d) => (d + Self::CLAMP) as usize,
            SeqDist::CrossChain => Self::BUCKETS - 1,
        }
    }

    pub fn code(self) -> i32 {
        match self {
            SeqDist::Intra(d) => d,
            SeqDist::CrossChain => Self::CROSS_CHAIN_CODE,
        }
    }
}

/// Directed edge `src → dst` (`j → i`); messages flow from `src` into `dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub dst: usize,
    pub src: usize,
    pub seq_dist: SeqDist,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeInfo {
    pub chain: usize,
    pub pos_in_chain: usize,
    pub aa: AminoAcid,
    pub seq_index: i32,
}

/// The two sequence neighbors that anchor a node's local frame.
///
/// Interior nodes use `(i−1, i+1)`. The first node of a chain uses the forward
/// pair `(i+1, i+2)` and the last node the backward pair `(i−1, i−2)`; both
/// are flagged `terminus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchors {
    /// Takes the role of `i−1`: the z-axis points toward it.
    pub toward: usize,
    /// Takes the role of `i+1`.
    pub side: usize,
    pub terminus: bool,
}

/// Node/edge structure of a graph, without coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub nodes: Vec<NodeInfo>,
    pub chain_starts: Vec<usize>,
    /// Sorted by `(dst, src)`.
    pub edges: Vec<Edge>,
    offsets: Vec<usize>,
}

impl Topology {
    pub fn new(nodes: Vec<NodeInfo>, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| (e.dst, e.src));
        edges.dedup_by_key(|e| (e.dst, e.src));
        let n = nodes.len();
        let mut offsets = vec![0; n + 1];
        for e in &edges {
            offsets[e.dst + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut chain_starts = Vec::new();
        for (idx, node) in nodes.iter().enumerate() {
            if node.pos_in_chain == 0 {
                chain_starts.push(idx);
            }
        }
        Topology {
            nodes,
            chain_starts,
            edges,
            offsets,
        }
    }

    /// A single-chain circulant graph where every node links to its `k/2`
    /// nearest ring neighbors on each side (plus the opposite node when `k`
    /// is odd). Every node has degree exactly `k` when `k < n` and `n·k` is even.
    pub fn ring_lattice(n: usize, k: usize) -> Self {
        let nodes = (0..n)
            .map(|i| NodeInfo {
                chain: 0,
                pos_in_chain: i,
                aa: AminoAcid::Gly,
                seq_index: i as i32 + 1,
            })
            .collect();
        let mut edges = Vec::new();
        if n > 1 {
            for i in 0..n {
                let mut offsets: Vec<usize> = (1..=k / 2).collect();
                if k % 2 == 1 && n % 2 == 0 {
                    offsets.push(n / 2);
                }
                for off in offsets {
                    for j in [(i + off) % n, (i + n - off % n) % n] {
                        if j != i {
                            edges.push(Edge {
                                dst: i,
                                src: j,
                                seq_dist: SeqDist::intra(j as i64 - i as i64),
                            });
                        }
                    }
                }
            }
        }
        Topology::new(nodes, edges)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn chain_len(&self, chain: usize) -> usize {
        let start = self.chain_starts[chain];
        let end = self
            .chain_starts
            .get(chain + 1)
            .copied()
            .unwrap_or(self.nodes.len());
        end - start
    }

    /// Edges `j → i` incoming to `i`.
    pub fn incoming(&self, i: usize) -> &[Edge] {
        &self.edges[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn find_edge(&self, dst: usize, src: usize) -> Option<&Edge> {
        self.edge_index(dst, src).map(|k| &self.edges[k])
    }

    /// Position of edge `src → dst` in [`Topology::edges`].
    pub fn edge_index(&self, dst: usize, src: usize) -> Option<usize> {
        let inc = self.incoming(dst);
        inc.binary_search_by_key(&src, |e| e.src)
            .ok()
            .map(|k| self.offsets[dst] + k)
    }

    /// Frame anchors of node `i`, or `None` if its chain has fewer than 3 residues.
    pub fn anchors(&self, i: usize) -> Option<Anchors> {
        let node = &self.nodes[i];
        let len = self.chain_len(node.chain);
        if len < 3 {
            return None;
        }
        let p = node.pos_in_chain;
        Some(if p == 0 {
            Anchors {
                toward: i + 1,
                side: i + 2,
                terminus: true,
            }
        } else if p + 1 == len {
            Anchors {
                toward: i - 1,
                side: i - 2,
                terminus: true,
            }
        } else {
            Anchors {
                toward: i - 1,
                side: i + 1,
                terminus: false,
            }
        })
    }

    /// Whether the node sits at a chain end (or its chain is too short for an interior frame).
    pub fn is_terminus(&self, i: usize) -> bool {
        self.anchors(i).map_or(true, |a| a.terminus)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("structure has no residues")]
    EmptyStructure,
    #[error("cutoff must be positive and finite, got {0}")]
    InvalidCutoff(f64),
    #[error("{level} level needs atoms {needed:?}; missing in {}", join_ids(.residues))]
    AtomRequirementViolated {
        level: Level,
        needed: &'static [&'static str],
        residues: Vec<ResidueId>,
    },
}

fn join_ids(ids: &[ResidueId]) -> String {
    ids.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

/// G = (V, E, R) at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct ProteinGraph {
    pub level: Level,
    pub cutoff: f64,
    pub topology: Topology,
    /// Position matrix `R_i` per node; rows in canonical atom order.
    pub positions: Vec<Vec<Atom>>,
}

impl ProteinGraph {
    pub fn len(&self) -> usize {
        self.topology.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topology.is_empty()
    }

    pub fn ca(&self, i: usize) -> Vec3 {
        self.positions[i][self.level.ca_row()].position
    }

    pub fn row(&self, i: usize, name: &str) -> Option<Vec3> {
        self.positions[i]
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.position)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.topology.edges
    }

    /// One-hot amino-acid type per node.
    pub fn node_features(&self) -> Vec<[f64; 20]> {
        self.topology
            .nodes
            .iter()
            .map(|n| {
                let mut v = [0.0; 20];
                v[n.aa.index()] = 1.0;
                v
            })
            .collect()
    }
}

pub fn build_graph(
    structure: &Structure,
    level: Level,
    cutoff: f64,
) -> Result<ProteinGraph, GraphError> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(GraphError::InvalidCutoff(cutoff));
    }
    if structure.is_empty() {
        return Err(GraphError::EmptyStructure);
    }
    let needed = level.required_atoms();
    let violating: Vec<ResidueId> = structure
        .chains
        .iter()
        .flat_map(|c| {
            c.residues
                .iter()
                .filter(|r| needed.iter().any(|n| r.atom(n).is_none()))
                .map(|r| ResidueId {
                    chain: c.id.clone(),
                    seq_index: r.seq_index,
                })
        })
        .collect();
    if !violating.is_empty() {
        return Err(GraphError::AtomRequirementViolated {
            level,
            needed,
            residues: violating,
        });
    }

    let mut nodes = Vec::new();
    let mut positions = Vec::new();
    for (ci, chain) in structure.chains.iter().enumerate() {
        for (pi, res) in chain.residues.iter().enumerate() {
            nodes.push(NodeInfo {
                chain: ci,
                pos_in_chain: pi,
                aa: res.aa,
                seq_index: res.seq_index,
            });
            let rows = match level {
                Level::AminoAcid => vec![res.atom("CA").unwrap().clone()],
                Level::Backbone => ["N", "CA", "C"]
                    .iter()
                    .map(|n| res.atom(n).unwrap().clone())
                    .collect(),
                Level::AllAtom => res.atoms.clone(),
            };
            positions.push(rows);
        }
    }

    let ca: Vec<Vec3> = positions
        .iter()
        .map(|rows| rows[level.ca_row()].position)
        .collect();
    let edges = radius_pairs(&ca, cutoff)
        .into_iter()
        .map(|(dst, src)| {
            let (a, b) = (&nodes[dst], &nodes[src]);
            let seq_dist = if a.chain == b.chain {
                SeqDist::intra(b.pos_in_chain as i64 - a.pos_in_chain as i64)
            } else {
                SeqDist::CrossChain
            };
            Edge { dst, src, seq_dist }
        })
        .collect();

    Ok(ProteinGraph {
        level,
        cutoff,
        topology: Topology::new(nodes, edges),
        positions,
    })
}

/// All ordered pairs `(i, j)`, `i ≠ j`, with `|p_i − p_j| < cutoff`, via a
/// uniform cell grid of edge length `cutoff`.
fn radius_pairs(points: &[Vec3], cutoff: f64) -> Vec<(usize, usize)> {
    let cell_of = |p: &Vec3| {
        (
            (p.x / cutoff).floor() as i64,
            (p.y / cutoff).floor() as i64,
            (p.z / cutoff).floor() as i64,
        )
    };
    let mut cells: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        cells.entry(cell_of(p)).or_default().push(i);
    }
    let cut2 = cutoff * cutoff;
    let mut pairs = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let (cx, cy, cz) = cell_of(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(members) = cells.get(&(cx + dx, cy + dy, cz + dz)) else {
                        continue;
                    };
                    for &j in members {
                        if j != i && (points[j] - p).norm_squared() < cut2 {
                            pairs.push((i, j));
                        }
                    }
                }
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub min: usize,
    pub mean: f64,
    pub max: usize,
}

/// Out-degree statistics over directed edges.
pub fn degree_stats(topology: &Topology) -> DegreeStats {
    let n = topology.len();
    if n == 0 {
        return DegreeStats {
            min: 0,
            mean: 0.0,
            max: 0,
        };
    }
    let mut out = vec![0usize; n];
    for e in &topology.edges {
        out[e.src] += 1;
    }
    DegreeStats {
        min: *out.iter().min().unwrap(),
        mean: topology.edges.len() as f64 / n as f64,
        max: *out.iter().max().unwrap(),
    }
}
