use std::collections::HashSet;

use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

use pronet_geom::chemistry::chi_quadruples;
use pronet_geom::completeness::{apply_se3, gr_distance, mirror, sample_se3};
use pronet_geom::frame::{angle_distance, Frame, Vec3};
use pronet_geom::geometry::{
    chi_angles, euler_triple, geometric_representation, gr_from_json, gr_to_json, rotation_from_euler,
};
use pronet_geom::graph::{build_graph, Level};
use pronet_geom::structure::{read_json, write_json};
use pronet_geom::synthetic::{build_residue, synthetic_chain};
use pronet_geom::AminoAcid;

fn level() -> impl Strategy<Value = Level> {
    prop::sample::select(Level::ALL.to_vec())
}

fn with_chi() -> impl Strategy<Value = AminoAcid> {
    prop::sample::select(
        AminoAcid::ALL
            .iter()
            .copied()
            .filter(|&aa| !chi_quadruples(aa).is_empty())
            .collect::<Vec<_>>(),
    )
}

const BACKBONE: [[f64; 3]; 4] = [[-0.525, 1.363, 0.0], [0.0, 0.0, 0.0], [1.525, 0.0, 0.0], [2.15, -1.06, 0.0]];

fn backbone() -> [Vec3; 4] {
    BACKBONE.map(|p| Vec3::new(p[0], p[1], p[2]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rigid_motions_leave_the_representation_unchanged(len in 3usize..60, seed in 0u64..1000, motion in any::<u64>(), level in level()) {
        let s = synthetic_chain(len, seed);
        let a = geometric_representation(&build_graph(&s, level, 10.0).unwrap()).unwrap();
        let moved = apply_se3(&s, &sample_se3(motion));
        let b = geometric_representation(&build_graph(&moved, level, 10.0).unwrap()).unwrap();
        prop_assert!(gr_distance(&a, &b).unwrap().max < 1e-9);
    }

    #[test]
    fn mirroring_negates_signed_angles(len in 5usize..40, seed in 0u64..1000) {
        let s = synthetic_chain(len, seed);
        let a = geometric_representation(&build_graph(&s, Level::AllAtom, 10.0).unwrap()).unwrap();
        let b = geometric_representation(&build_graph(&mirror(&s), Level::AllAtom, 10.0).unwrap()).unwrap();
        prop_assert_eq!(a.edges.len(), b.edges.len());
        for (x, y) in a.edges.iter().zip(&b.edges) {
            prop_assert!((x.base.d - y.base.d).abs() < 1e-9);
            prop_assert!(angle_distance(x.base.theta, y.base.theta) < 1e-9);
            prop_assert!(angle_distance(x.base.phi, -y.base.phi) < 1e-9);
            prop_assert!(angle_distance(x.base.tau, -y.base.tau) < 1e-9);
        }
        for (x, y) in a.nodes.iter().zip(&b.nodes) {
            let (cx, cy) = (x.chi.as_ref().unwrap(), y.chi.as_ref().unwrap());
            prop_assert_eq!(cx.mask, cy.mask);
            for (p, q) in cx.angles.iter().zip(&cy.angles) {
                prop_assert!(angle_distance(*p, -q) < 1e-9);
            }
        }
    }

    #[test]
    fn euler_triple_round_trips(a in any::<u64>(), b in any::<u64>()) {
        let (ma, mb) = (sample_se3(a), sample_se3(b));
        let fi = Frame::from_columns(ma.translation, &ma.rotation);
        let fj = Frame::from_columns(mb.translation, &mb.rotation);
        prop_assume!(fi.z.cross(&fj.z).norm() > 1e-6);
        let m = rotation_from_euler(&euler_triple(&fi, &fj).unwrap());
        prop_assert!((fi.axes_columns() * m - fj.axes_columns()).amax() < 1e-9);
    }

    #[test]
    fn representation_json_round_trips(len in 1usize..25, seed in 0u64..1000, level in level()) {
        let s = synthetic_chain(len, seed);
        let gr = geometric_representation(&build_graph(&s, level, 10.0).unwrap()).unwrap();
        let text = gr_to_json(&gr);
        let back = gr_from_json(&text).unwrap();
        prop_assert_eq!(&back.nodes, &gr.nodes);
        prop_assert_eq!(&back.edges, &gr.edges);
        prop_assert_eq!(back.cutoff, gr.cutoff);
        prop_assert_eq!(gr_to_json(&back), text);
    }

    #[test]
    fn structure_json_round_trips(len in 1usize..25, seed in 0u64..1000) {
        let s = synthetic_chain(len, seed);
        let back = read_json(write_json(&s).as_bytes()).unwrap().into_strict().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn edges_are_symmetric_and_grow_with_cutoff(len in 2usize..60, seed in 0u64..1000, c1 in 2.0f64..15.0, extra in 0.0f64..10.0) {
        let s = synthetic_chain(len, seed);
        let small = build_graph(&s, Level::AminoAcid, c1).unwrap();
        let large = build_graph(&s, Level::AminoAcid, c1 + extra).unwrap();
        let pairs = |g: &pronet_geom::ProteinGraph| g.edges().iter().map(|e| (e.dst, e.src)).collect::<HashSet<_>>();
        let (ps, pl) = (pairs(&small), pairs(&large));
        for &(i, j) in &ps {
            prop_assert!(ps.contains(&(j, i)));
        }
        prop_assert!(ps.is_subset(&pl));
        let moved = build_graph(&apply_se3(&s, &sample_se3(seed)), Level::AminoAcid, c1).unwrap();
        prop_assert_eq!(pairs(&moved), ps);
    }

    #[test]
    fn rotating_distal_atoms_shifts_one_torsion(aa in with_chi(), chi in prop::collection::vec(-3.1f64..3.1, 4), k in 0usize..4, delta in -3.0f64..3.0) {
        let n = chi_quadruples(aa).len();
        let k = k % n;
        let residue = build_residue(aa, 1, backbone(), &chi);
        // atoms downstream of bond k are exactly those that move when χᵏ is changed
        let mut bumped = chi.clone();
        bumped[k] += 0.5;
        let probe = build_residue(aa, 1, backbone(), &bumped);
        let quad = chi_quadruples(aa)[k];
        let (p1, p2) = (residue.position(quad[1]).unwrap(), residue.position(quad[2]).unwrap());
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(p2 - p1), delta);
        let mut turned = residue.clone();
        for (atom, other) in turned.atoms.iter_mut().zip(&probe.atoms) {
            if (atom.position - other.position).norm() > 1e-9 {
                atom.position = p2 + rot * (atom.position - p2);
            }
        }
        let (before, after) = (chi_angles(&residue), chi_angles(&turned));
        for m in 0..n {
            let expected = if m == k { before.angles[m] + delta } else { before.angles[m] };
            prop_assert!(angle_distance(after.angles[m], expected) < 1e-9, "chi{} of {}", m + 1, aa);
        }
    }
}
