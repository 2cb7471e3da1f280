//! Relative rotation of two backbone frames as an Euler triple, and back.

use pronet_geom::geometry::{backbone_frame, euler_triple, rotation_from_euler};
use pronet_geom::synthetic::synthetic_chain;

fn main() {
    let s = synthetic_chain(12, 3);
    let res = &s.chains[0].residues;
    let frame = |k: usize| {
        let r = &res[k];
        backbone_frame(&r.position("N").unwrap(), &r.position("CA").unwrap(), &r.position("C").unwrap()).unwrap()
    };
    for (i, j) in [(2, 3), (2, 6), (5, 11)] {
        let (fi, fj) = (frame(i), frame(j));
        let t = euler_triple(&fi, &fj).unwrap();
        let err = (fi.axes_columns() * rotation_from_euler(&t) - fj.axes_columns()).amax();
        println!(
            "{i:>2} -> {j:>2}  tau = ({:+.4}, {:+.4}, {:+.4})  round-trip error {err:.1e}",
            t.tau1, t.tau2, t.tau3
        );
    }
}
