//! 1-hop versus 2-hop message counts as the neighbourhood grows.

use pronet_geom::model::run_bench;

fn main() {
    for k in [8, 16, 24, 32] {
        for regular in [true, false] {
            let row = &run_bench(400, k, regular, 0)[0];
            println!(
                "k {k:>2} {:<8} mean degree {:>6.2}  one_hop {:>6}  two_hop {:>7}  ratio {:>7.3}  gr {:.2} ms",
                if regular { "regular" } else { "radius" },
                row.mean_degree,
                row.counts.one_hop,
                row.counts.two_hop,
                row.counts.ratio().unwrap(),
                row.gr_seconds * 1e3
            );
        }
    }
}
