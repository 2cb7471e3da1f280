//! Radius graphs over a synthetic chain at a few cutoffs.

use pronet_geom::synthetic::synthetic_chain;
use pronet_geom::{build_graph, degree_stats, Level};

fn main() {
    let s = synthetic_chain(150, 1);
    for cutoff in [6.0, 8.0, 10.0, 12.0] {
        let g = build_graph(&s, Level::AllAtom, cutoff).unwrap();
        let st = degree_stats(&g.topology);
        println!(
            "cutoff {cutoff:>4.1}  edges {:>5}  degree min {} mean {:.2} max {}",
            g.edges().len(),
            st.min,
            st.mean,
            st.max
        );
    }
    let g = build_graph(&s, Level::AllAtom, 10.0).unwrap();
    let e = g.edges()[0];
    println!("first edge {} -> {} seq_dist {:?}; rows at node 0: {}", e.src, e.dst, e.seq_dist, g.positions[0].len());
}
