//! The (d, θ, φ, τ) tuple on the edges around one residue.

use pronet_geom::synthetic::synthetic_chain;
use pronet_geom::{build_graph, geometric_representation, Level};

fn main() {
    let s = synthetic_chain(40, 2);
    let gr = geometric_representation(&build_graph(&s, Level::AminoAcid, 10.0).unwrap()).unwrap();
    println!("{:>3} {:>3} {:>8} {:>8} {:>8} {:>8}", "i", "j", "d", "theta", "phi", "tau");
    for e in gr.edges.iter().filter(|e| e.i == 20) {
        println!(
            "{:>3} {:>3} {:>8.3} {:>8.3} {:>8.3} {:>8.3}",
            e.i, e.j, e.base.d, e.base.theta, e.base.phi, e.base.tau
        );
    }
    println!("{} edges, {} flagged", gr.edges.len(), gr.issues.len());
}
