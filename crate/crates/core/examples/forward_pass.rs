//! Untrained message passing over the representation.

use pronet_geom::completeness::{apply_se3, sample_se3};
use pronet_geom::model::{Model, ModelConfig};
use pronet_geom::synthetic::synthetic_chain;
use pronet_geom::{build_graph, geometric_representation, Level};

fn main() {
    let s = synthetic_chain(50, 6);
    let moved = apply_se3(&s, &sample_se3(99));
    let config = ModelConfig::default();
    for level in Level::ALL {
        let model = Model::new(&config, level).unwrap();
        let run = |st| {
            let g = build_graph(st, level, config.cutoff).unwrap();
            model.forward(&g, &geometric_representation(&g).unwrap()).unwrap()
        };
        let (a, b) = (run(&s), run(&moved));
        let diff = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        println!(
            "{:<10} width {:>3}  out[0..3] = {:+.4} {:+.4} {:+.4}  moved diff {diff:.1e}",
            level.as_str(),
            config.feature_width(level),
            a[0],
            a[1],
            a[2]
        );
    }
}
