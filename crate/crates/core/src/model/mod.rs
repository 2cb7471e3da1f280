//! An untrained invariant message-passing network over geometric representations.
//!
//! Edge geometry is embedded with Gaussian radial functions on `d` (under a
//! cosine envelope that vanishes at the cutoff) and `sin kα, cos kα` on every
//! angle. Each layer updates
//!
//! ```text
//! v_i ← σ(U·[v_i ; Σ_j σ(W·[v_j ; e_ji ; s_ji] + b)] + c)
//! ```
//!
//! with `s_ji` a fixed random embedding of the sequential distance and
//! σ = SiLU. The graph representation is an affine map of `Σ_i v_i`.

mod bench;

pub use bench::{
    count_messages, cutoff_for_mean_degree, regular_graph, run_bench, torsion_scalars, BenchRow,
    MessageCounts, Scheme,
};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chemistry::MAX_CHI;
use crate::geometry::GrSet;
use crate::graph::{Level, ProteinGraph, SeqDist};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub hidden_dim: usize,
    pub num_layers: usize,
    pub num_rbf: usize,
    pub num_fourier: usize,
    pub seed: u64,
    /// Radius at which the distance envelope reaches 0.
    pub cutoff: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            hidden_dim: 32,
            num_layers: 3,
            num_rbf: 16,
            num_fourier: 3,
            seed: 0,
            cutoff: crate::graph::DEFAULT_CUTOFF,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        let sizes = [self.hidden_dim, self.num_layers, self.num_rbf, self.num_fourier];
        if sizes.contains(&0) || !(self.cutoff > 0.0) {
            return Err(ModelError::ConfigMismatch(format!("all sizes and the cutoff must be positive: {self:?}")));
        }
        Ok(())
    }

    fn fourier_width(&self) -> usize {
        2 * self.num_fourier
    }

    /// Width of the per-edge geometry features.
    pub fn edge_width(&self, level: Level) -> usize {
        self.num_rbf + edge_angles(level) * self.fourier_width()
    }

    /// Width of the per-node torsion features (all-atom level only).
    pub fn node_width(&self, level: Level) -> usize {
        match level {
            Level::AllAtom => MAX_CHI * self.fourier_width(),
            _ => 0,
        }
    }

    /// Combined geometry feature width: radial plus every angular block.
    pub fn feature_width(&self, level: Level) -> usize {
        self.edge_width(level) + self.node_width(level)
    }
}

fn edge_angles(level: Level) -> usize {
    match level {
        Level::AminoAcid => 3,
        _ => 6,
    }
}

/// Cosine envelope, 1 at 0 and 0 from the cutoff on.
pub fn envelope(d: f64, cutoff: f64) -> f64 {
    if d >= cutoff {
        0.0
    } else {
        0.5 * ((PI * d / cutoff).cos() + 1.0)
    }
}

/// Gaussian radial basis on `[0, cutoff]`, times the envelope.
pub fn radial_basis(d: f64, config: &ModelConfig) -> Vec<f64> {
    let k = config.num_rbf;
    let spacing = config.cutoff / (k.max(2) - 1) as f64;
    let gamma = 0.5 / (spacing * spacing);
    let env = envelope(d, config.cutoff);
    (0..k)
        .map(|m| {
            let mu = m as f64 * spacing;
            env * (-gamma * (d - mu).powi(2)).exp()
        })
        .collect()
}

/// `sin kα, cos kα` for `k = 1..=n`, appended to `out`.
pub fn fourier_features(alpha: f64, n: usize, out: &mut Vec<f64>) {
    for k in 1..=n {
        let (s, c) = (k as f64 * alpha).sin_cos();
        out.push(s);
        out.push(c);
    }
}

/// Basis-embedded geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    /// Per edge, in the representation's edge order.
    pub edges: Vec<Vec<f64>>,
    /// Per node; empty rows below the all-atom level. Undefined torsions are zeros.
    pub nodes: Vec<Vec<f64>>,
}

pub fn embed_geometries(gr: &GrSet, config: &ModelConfig) -> Embedding {
    let edges = gr
        .edges
        .iter()
        .map(|e| {
            let mut f = radial_basis(e.base.d, config);
            for a in e.base.angles() {
                fourier_features(a, config.num_fourier, &mut f);
            }
            if gr.level != Level::AminoAcid {
                let t = e.euler.map(|t| t.angles()).unwrap_or([0.0; 3]);
                for a in t {
                    fourier_features(a, config.num_fourier, &mut f);
                }
            }
            f
        })
        .collect();
    let nodes = gr
        .nodes
        .iter()
        .map(|n| {
            let mut f = Vec::new();
            if gr.level == Level::AllAtom {
                for k in 0..MAX_CHI {
                    match n.chi.as_ref().and_then(|c| c.get(k)) {
                        Some(a) => fourier_features(a, config.num_fourier, &mut f),
                        None => f.extend(std::iter::repeat_n(0.0, config.fourier_width())),
                    }
                }
            }
            f
        })
        .collect();
    Embedding { edges, nodes }
}

#[derive(Debug, Clone)]
struct Linear {
    w: Vec<f64>,
    b: Vec<f64>,
    fan_in: usize,
}

impl Linear {
    fn new(rng: &mut ChaCha8Rng, fan_in: usize, fan_out: usize) -> Self {
        let bound = 1.0 / (fan_in as f64).sqrt();
        let mut draw = |n: usize| (0..n).map(|_| rng.random_range(-bound..=bound)).collect();
        Linear {
            w: draw(fan_in * fan_out),
            b: draw(fan_out),
            fan_in,
        }
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.fan_in);
        for (o, (row, b)) in out.iter_mut().zip(self.w.chunks_exact(self.fan_in).zip(&self.b)) {
            *o = b + row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>();
        }
    }
}

fn silu(x: f64) -> f64 {
    x / (1.0 + (-x).exp())
}

const SEQ_EMBED: usize = 8;

/// Randomly initialised weights, deterministic per `(config, level)`.
#[derive(Debug, Clone)]
pub struct Model {
    config: ModelConfig,
    level: Level,
    embed: Linear,
    seq_table: Vec<f64>,
    message: Vec<Linear>,
    update: Vec<Linear>,
    output: Linear,
}

impl Model {
    pub fn new(config: &ModelConfig, level: Level) -> Result<Self, ModelError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let h = config.hidden_dim;
        let embed = Linear::new(&mut rng, 20 + config.node_width(level), h);
        let seq_table = (0..SeqDist::BUCKETS * SEQ_EMBED)
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        let msg_in = h + config.edge_width(level) + SEQ_EMBED;
        let mut message = Vec::new();
        let mut update = Vec::new();
        for _ in 0..config.num_layers {
            message.push(Linear::new(&mut rng, msg_in, h));
            update.push(Linear::new(&mut rng, 2 * h, h));
        }
        let output = Linear::new(&mut rng, h, h);
        Ok(Model {
            config: config.clone(),
            level,
            embed,
            seq_table,
            message,
            update,
            output,
        })
    }

    pub fn forward(&self, graph: &ProteinGraph, gr: &GrSet) -> Result<Vec<f64>, ModelError> {
        let mismatch = |m: String| Err(ModelError::ConfigMismatch(m));
        if gr.level != graph.level || graph.level != self.level {
            return mismatch(format!(
                "levels differ: model {}, graph {}, representation {}",
                self.level, graph.level, gr.level
            ));
        }
        if gr.nodes.len() != graph.len() || gr.edges.len() != graph.edges().len() {
            return mismatch("representation does not belong to this graph".into());
        }
        let h = self.config.hidden_dim;
        let emb = embed_geometries(gr, &self.config);
        let onehot = graph.node_features();

        let mut v: Vec<Vec<f64>> = (0..graph.len())
            .map(|k| {
                let input: Vec<f64> = onehot[k].iter().chain(&emb.nodes[k]).copied().collect();
                let mut out = vec![0.0; h];
                self.embed.apply(&input, &mut out);
                out.iter_mut().for_each(|x| *x = silu(*x));
                out
            })
            .collect();

        let mut msg_in = Vec::with_capacity(h + emb.edges.first().map_or(0, Vec::len) + SEQ_EMBED);
        let mut msg = vec![0.0; h];
        let mut upd_in = vec![0.0; 2 * h];
        for (wm, wu) in self.message.iter().zip(&self.update) {
            let mut agg = vec![vec![0.0; h]; graph.len()];
            for (k, e) in gr.edges.iter().enumerate() {
                msg_in.clear();
                msg_in.extend_from_slice(&v[e.j]);
                msg_in.extend_from_slice(&emb.edges[k]);
                let b = e.seq_dist.bucket() * SEQ_EMBED;
                msg_in.extend_from_slice(&self.seq_table[b..b + SEQ_EMBED]);
                wm.apply(&msg_in, &mut msg);
                for (a, m) in agg[e.i].iter_mut().zip(&msg) {
                    *a += silu(*m);
                }
            }
            for (vi, ai) in v.iter_mut().zip(&agg) {
                upd_in[..h].copy_from_slice(vi);
                upd_in[h..].copy_from_slice(ai);
                wu.apply(&upd_in, vi);
                vi.iter_mut().for_each(|x| *x = silu(*x));
            }
        }
        let g = readout(&v, h);
        let mut out = vec![0.0; h];
        self.output.apply(&g, &mut out);
        Ok(out)
    }
}

/// Sum over node rows.
pub fn readout(nodes: &[Vec<f64>], width: usize) -> Vec<f64> {
    let mut g = vec![0.0; width];
    for row in nodes {
        for (a, x) in g.iter_mut().zip(row) {
            *a += x;
        }
    }
    g
}

/// Builds the model for the graph's level and runs it.
pub fn forward(graph: &ProteinGraph, gr: &GrSet, config: &ModelConfig) -> Result<Vec<f64>, ModelError> {
    Model::new(config, graph.level)?.forward(graph, gr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geometric_representation;
    use crate::graph::build_graph;
    use crate::synthetic::synthetic_chain;

    #[test]
    fn envelope_vanishes_at_cutoff() {
        let c = ModelConfig::default();
        assert!(radial_basis(c.cutoff, &c).iter().all(|x| *x == 0.0));
        assert!(radial_basis(12.0, &c).iter().all(|x| *x == 0.0));
        assert!(radial_basis(3.8, &c).iter().any(|x| *x > 0.1));
    }

    #[test]
    fn fourier_is_periodic() {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        fourier_features(0.7, 4, &mut a);
        fourier_features(0.7 + 2.0 * PI, 4, &mut b);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn feature_widths() {
        let c = ModelConfig {
            num_rbf: 5,
            num_fourier: 2,
            ..ModelConfig::default()
        };
        assert_eq!(c.feature_width(Level::AminoAcid), 5 + 3 * 4);
        assert_eq!(c.feature_width(Level::Backbone), 5 + 6 * 4);
        assert_eq!(c.feature_width(Level::AllAtom), 5 + 10 * 4);
        let s = synthetic_chain(12, 0);
        for level in Level::ALL {
            let gr = geometric_representation(&build_graph(&s, level, 10.0).unwrap()).unwrap();
            let e = embed_geometries(&gr, &c);
            assert!(e.edges.iter().all(|f| f.len() == c.edge_width(level)));
            assert!(e.nodes.iter().all(|f| f.len() == c.node_width(level)));
        }
    }

    #[test]
    fn shape_and_determinism() {
        let s = synthetic_chain(20, 5);
        let g = build_graph(&s, Level::AllAtom, 10.0).unwrap();
        let gr = geometric_representation(&g).unwrap();
        let c = ModelConfig::default();
        let a = forward(&g, &gr, &c).unwrap();
        assert_eq!(a.len(), c.hidden_dim);
        assert!(a.iter().all(|x| x.is_finite()));
        let b = forward(&g, &gr, &c).unwrap();
        assert_eq!(a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), b.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
        let other = forward(&g, &gr, &ModelConfig { seed: 1, ..c.clone() }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn mismatches_are_rejected() {
        let s = synthetic_chain(10, 5);
        let g = build_graph(&s, Level::Backbone, 10.0).unwrap();
        let aa = geometric_representation(&build_graph(&s, Level::AminoAcid, 10.0).unwrap()).unwrap();
        assert!(matches!(forward(&g, &aa, &ModelConfig::default()), Err(ModelError::ConfigMismatch(_))));
        let bad = ModelConfig { hidden_dim: 0, ..ModelConfig::default() };
        let gr = geometric_representation(&g).unwrap();
        assert!(matches!(forward(&g, &gr, &bad), Err(ModelError::ConfigMismatch(_))));
    }

    #[test]
    fn readout_ignores_row_order() {
        let rows = vec![vec![1.0, 2.0], vec![0.25, -1.0], vec![3.0, 0.5]];
        let mut rev = rows.clone();
        rev.reverse();
        assert_eq!(readout(&rows, 2), readout(&rev, 2));
    }
}
