//! Stable JSON exchange format for [`GrSet`].
//!
//! Field order is fixed by the row structs below. Floats are written with 17
//! significant digits, which round-trips every finite `f64` exactly.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::chemistry::AminoAcid;
use crate::graph::{Level, SeqDist};

use super::{BaseTuple, ChiSet, EdgeGeometry, EulerTriple, GrSet, NodeGeometry, Site};

#[derive(Serialize, Deserialize)]
struct GrRow {
    level: Level,
    cutoff: f64,
    nodes: Vec<NodeRow>,
    edges: Vec<EdgeRow>,
}

#[derive(Serialize, Deserialize)]
struct NodeRow {
    index: usize,
    aa: String,
    terminus: bool,
    chi: Vec<f64>,
    chi_mask: u8,
    degenerate: bool,
}

#[derive(Serialize, Deserialize)]
struct EdgeRow {
    i: usize,
    j: usize,
    seq_dist: i32,
    d: f64,
    theta: f64,
    phi: f64,
    tau: f64,
    euler: Option<[f64; 3]>,
    degenerate: bool,
}

/// Writes `f64` as `{:.16e}`; non-finite values become `null`.
struct SigFigs;

impl Formatter for SigFigs {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

fn to_row(gr: &GrSet) -> GrRow {
    let node_flag = |n: usize| gr.issues.iter().any(|i| i.site == Site::Node(n));
    GrRow {
        level: gr.level,
        cutoff: gr.cutoff,
        nodes: gr
            .nodes
            .iter()
            .map(|n| {
                let chi = n.chi.clone().unwrap_or_default();
                NodeRow {
                    index: n.index,
                    aa: n.aa.code3().to_string(),
                    terminus: n.terminus,
                    chi: chi.angles,
                    chi_mask: chi.mask,
                    degenerate: node_flag(n.index),
                }
            })
            .collect(),
        edges: gr
            .edges
            .iter()
            .map(|e| EdgeRow {
                i: e.i,
                j: e.j,
                seq_dist: e.seq_dist.code(),
                d: e.base.d,
                theta: e.base.theta,
                phi: e.base.phi,
                tau: e.base.tau,
                euler: e.euler.map(|t| t.angles()),
                degenerate: e.degenerate,
            })
            .collect(),
    }
}

/// Compact JSON, newline-terminated.
pub fn gr_to_json(gr: &GrSet) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigs);
    to_row(gr).serialize(&mut ser).expect("serializing to memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Inverse of [`gr_to_json`]. Non-fatal issues are not part of the format, so
/// `issues` comes back empty; the per-row `degenerate` flags are kept.
pub fn gr_from_json(input: &str) -> Result<GrSet, serde_json::Error> {
    use serde::de::Error;
    let row: GrRow = serde_json::from_str(input)?;
    let nodes = row
        .nodes
        .into_iter()
        .map(|n| {
            let aa: AminoAcid = n.aa.parse().map_err(|_| Error::custom(format!("unknown residue {}", n.aa)))?;
            if n.chi.len() != n.chi_mask.count_ones() as usize {
                return Err(Error::custom(format!("node {}: chi length disagrees with chi_mask", n.index)));
            }
            let chi = (row.level == Level::AllAtom).then_some(ChiSet {
                angles: n.chi,
                mask: n.chi_mask,
            });
            Ok(NodeGeometry {
                index: n.index,
                aa,
                terminus: n.terminus,
                chi,
            })
        })
        .collect::<Result<_, serde_json::Error>>()?;
    let edges = row
        .edges
        .into_iter()
        .map(|e| EdgeGeometry {
            i: e.i,
            j: e.j,
            seq_dist: if e.seq_dist == SeqDist::CROSS_CHAIN_CODE {
                SeqDist::CrossChain
            } else {
                SeqDist::Intra(e.seq_dist)
            },
            base: BaseTuple {
                d: e.d,
                theta: e.theta,
                phi: e.phi,
                tau: e.tau,
            },
            euler: e.euler.map(|[tau1, tau2, tau3]| EulerTriple { tau1, tau2, tau3 }),
            degenerate: e.degenerate,
        })
        .collect();
    Ok(GrSet {
        level: row.level,
        cutoff: row.cutoff,
        nodes,
        edges,
        issues: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::synthetic::synthetic_chain;

    #[test]
    fn floats_keep_seventeen_digits() {
        let mut out = Vec::new();
        SigFigs.write_f64(&mut out, 0.1).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "1.0000000000000001e-1");
    }

    #[test]
    fn round_trip_every_level() {
        let s = synthetic_chain(20, 3);
        for level in Level::ALL {
            let gr = super::super::geometric_representation(&build_graph(&s, level, 10.0).unwrap()).unwrap();
            let text = gr_to_json(&gr);
            let back = gr_from_json(&text).unwrap();
            assert_eq!((back.level, &back.nodes, &back.edges), (gr.level, &gr.nodes, &gr.edges));
            assert_eq!(gr_to_json(&back), text);
        }
    }
}
