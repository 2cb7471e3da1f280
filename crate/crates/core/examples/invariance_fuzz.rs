//! Random rigid motions leave the representation unchanged; a mirror image
//! does not.

use pronet_geom::completeness::{gr_distance, invariance_fuzz, mirror};
use pronet_geom::synthetic::synthetic_chain;
use pronet_geom::{build_graph, geometric_representation, Level};

fn main() {
    let s = synthetic_chain(80, 4);
    for level in Level::ALL {
        let r = invariance_fuzz(&s, level, 10.0, 0..200).unwrap();
        let a = geometric_representation(&build_graph(&s, level, 10.0).unwrap()).unwrap();
        let b = geometric_representation(&build_graph(&mirror(&s), level, 10.0).unwrap()).unwrap();
        println!(
            "{:<10} {} motions: max {:.1e} (seed {})   mirror: {:.3}",
            level.as_str(),
            r.trials,
            r.worst.max,
            r.worst_seed,
            gr_distance(&a, &b).unwrap().angular
        );
    }
}
