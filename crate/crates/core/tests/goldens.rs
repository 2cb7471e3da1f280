//! Hand-checked configurations and independent oracles.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, Rotation3, Unit};
use pronet_geom::completeness::{gr_distance, kabsch_align, rmsd, verify_reconstruction};
use pronet_geom::frame::{angle_distance, dihedral, Vec3};
use pronet_geom::geometry::{backbone_torsions, chi_angles, geometric_representation, EdgeGeometry};
use pronet_geom::graph::{build_graph, Level};
use pronet_geom::model::{Model, ModelConfig};
use pronet_geom::structure::{Atom, Chain, Residue, Structure};
use pronet_geom::synthetic::{build_residue, synthetic_chain, synthetic_structure, SyntheticSpec};
use pronet_geom::AminoAcid;

fn ca_chain(id: &str, points: &[[f64; 3]]) -> Chain {
    Chain {
        id: id.into(),
        residues: points
            .iter()
            .enumerate()
            .map(|(k, p)| Residue {
                aa: AminoAcid::Gly,
                seq_index: k as i32 + 1,
                atoms: vec![Atom::new("CA", Vec3::new(p[0], p[1], p[2]))],
            })
            .collect(),
    }
}

/// Step-by-step vector algebra, independent of the library's helpers.
fn oracle_tuple(prev_i: Vec3, ri: Vec3, next_i: Vec3, prev_j: Vec3, rj: Vec3) -> [f64; 4] {
    let p1 = (prev_i - ri).normalize();
    let p2 = (next_i - ri).normalize();
    let v = rj - ri;
    let d = v.norm();
    let pij = v / d;
    let theta = p1.dot(&pij).clamp(-1.0, 1.0).acos();
    // azimuth of p_ij in the frame z = p1, y ∝ p1 × p2, x = y × z
    let z = p1;
    let y = p1.cross(&p2).normalize();
    let x = y.cross(&z);
    let phi = pij.dot(&y).atan2(pij.dot(&x));
    // τ as the dihedral (r_i + p_i, r_i, r_j, r_j + p_j); neither end points at the other here
    let pj = (prev_j - rj).normalize();
    let b1 = -p1;
    let b2 = v;
    let b3 = pj;
    let n1 = b1.cross(&b2);
    let n2 = b2.cross(&b3);
    let tau = (b2.norm() * b1.dot(&n2)).atan2(n1.dot(&n2));
    [d, theta, phi, tau]
}

#[test]
fn six_point_base_tuple() {
    let a = [[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
    let b = [[0.0, 2.0, 1.0], [0.0, 2.0, 0.0], [1.0, 2.0, 0.0]];
    let s = Structure {
        chains: vec![ca_chain("A", &a), ca_chain("B", &b)],
    };
    let g = build_graph(&s, Level::AminoAcid, 10.0).unwrap();
    let gr = geometric_representation(&g).unwrap();
    let e = gr.edges.iter().find(|e| (e.i, e.j) == (1, 4)).unwrap();
    let got = [e.base.d, e.base.theta, e.base.phi, e.base.tau];

    let v = |p: [f64; 3]| Vec3::new(p[0], p[1], p[2]);
    let oracle = oracle_tuple(v(a[0]), v(a[1]), v(a[2]), v(b[0]), v(b[1]));
    let frozen = [2.0, FRAC_PI_2, FRAC_PI_2, 0.0];
    for k in 0..4 {
        assert!((oracle[k] - frozen[k]).abs() < 1e-12, "oracle {oracle:?}");
        assert!((got[k] - frozen[k]).abs() < 1e-12, "got {got:?}");
    }
}

#[test]
fn dihedral_sign_follows_right_hand_rotation() {
    let p = |x, y, z| Vec3::new(x, y, z);
    let (a, b, c) = (p(1.0, 0.0, 0.0), p(0.0, 0.0, 0.0), p(0.0, 1.0, 0.0));
    assert!(dihedral(&a, &b, &c, &p(1.0, 1.0, 0.0)).unwrap().abs() < 1e-15);
    assert!((dihedral(&a, &b, &c, &p(-1.0, 1.0, 0.0)).unwrap() - PI).abs() < 1e-15);
    // rotating the cis point by +δ about b→c changes the torsion by +δ
    let axis = Unit::new_normalize(c - b);
    for delta in [0.4, 1.3, -2.2, FRAC_PI_2, -FRAC_PI_2] {
        let d = c + Rotation3::from_axis_angle(&axis, delta) * p(1.0, 0.0, 0.0);
        assert!(angle_distance(dihedral(&a, &b, &c, &d).unwrap(), delta) < 1e-12);
    }
    assert!((dihedral(&a, &b, &c, &p(0.0, 1.0, 1.0)).unwrap() + FRAC_PI_2).abs() < 1e-15);
}

/// Minimizes over in-plane rotations of both orientations of the plane.
fn planar_rmsd_search(a: &[Vec3], b: &[Vec3]) -> f64 {
    let center = |p: &[Vec3]| p.iter().sum::<Vec3>() / p.len() as f64;
    let (ca, cb) = (center(a), center(b));
    let a: Vec<Vec3> = a.iter().map(|p| p - ca).collect();
    let b: Vec<Vec3> = b.iter().map(|p| p - cb).collect();
    let eval = |alpha: f64, flip: bool| {
        let mut r = *Rotation3::from_axis_angle(&Vec3::z_axis(), alpha).matrix();
        if flip {
            r *= Matrix3::from_diagonal(&Vec3::new(1.0, -1.0, -1.0));
        }
        let moved: Vec<Vec3> = a.iter().map(|p| r * p).collect();
        rmsd(&moved, &b)
    };
    let mut best = f64::INFINITY;
    for flip in [false, true] {
        let steps = 720;
        let (mut lo, mut hi) = (0.0, 0.0);
        let mut coarse = f64::INFINITY;
        for s in 0..steps {
            let alpha = -PI + 2.0 * PI * s as f64 / steps as f64;
            let f = eval(alpha, flip);
            if f < coarse {
                coarse = f;
                lo = alpha - 2.0 * PI / steps as f64;
                hi = alpha + 2.0 * PI / steps as f64;
            }
        }
        // golden-section refinement
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
            if eval(m1, flip) < eval(m2, flip) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(eval(0.5 * (lo + hi), flip));
    }
    best
}

#[test]
fn kabsch_triangle_golden() {
    let a = vec![Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0)];
    let mut b = a.clone();
    b[1].x += 0.3;
    let oracle = planar_rmsd_search(&a, &b);
    let frozen = 0.1335230078829997;
    assert!((oracle - frozen).abs() < 1e-12, "{oracle}");
    let (m, r) = kabsch_align(&a, &b).unwrap();
    assert!((r - frozen).abs() < 1e-12, "{r}");
    assert!((m.rotation.determinant() - 1.0).abs() < 1e-12);
}

#[test]
fn leucine_known_rotations() {
    let backbone = [
        Vec3::new(-0.525, 1.363, 0.0),
        Vec3::zeros(),
        Vec3::new(1.525, 0.0, 0.0),
        Vec3::new(2.15, -1.06, 0.0),
    ];
    let zero = build_residue(AminoAcid::Leu, 1, backbone, &[]);
    let get = |r: &Residue, n: &str| r.position(n).unwrap();
    let mut leu = zero.clone();
    // χ¹ moves CG, CD1, CD2 about CA→CB; χ² moves CD1, CD2 about CB→CG
    // the template is built with both torsions at 0
    for ((axis_from, axis_to, moving), angle) in [
        (("CA", "CB", &["CG", "CD1", "CD2"][..]), 0.7),
        (("CB", "CG", &["CD1", "CD2"][..]), -1.2),
    ] {
        let (p1, p2) = (get(&leu, axis_from), get(&leu, axis_to));
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(p2 - p1), angle);
        for atom in leu.atoms.iter_mut().filter(|a| moving.contains(&a.name.as_str())) {
            atom.position = p2 + rot * (atom.position - p2);
        }
    }
    let chi = chi_angles(&leu);
    assert_eq!(chi.mask, 0b11);
    assert!(angle_distance(chi.angles[0], 0.7) < 1e-9);
    assert!(angle_distance(chi.angles[1], -1.2) < 1e-9);
}

#[test]
fn psi_perturbation_moves_only_psi() {
    let s = synthetic_chain(20, 5);
    let k = 9;
    let res = &s.chains[0].residues;
    let (ca, c) = (res[k].position("CA").unwrap(), res[k].position("C").unwrap());
    let rot = Rotation3::from_axis_angle(&Unit::new_normalize(c - ca), 0.3);
    let mut moved = s.clone();
    for (idx, r) in moved.chains[0].residues.iter_mut().enumerate() {
        for atom in &mut r.atoms {
            if idx > k || (idx == k && atom.name == "O") {
                atom.position = c + rot * (atom.position - c);
            }
        }
    }
    let before = &backbone_torsions(&s).unwrap()[0];
    let after = &backbone_torsions(&moved).unwrap()[0];
    for (idx, (b, a)) in before.iter().zip(after).enumerate() {
        let diff = |x: Option<f64>, y: Option<f64>| angle_distance(x.unwrap_or(0.0), y.unwrap_or(0.0));
        assert!(diff(b.phi, a.phi) < 1e-9 && diff(b.omega, a.omega) < 1e-9);
        if idx == k {
            assert!(angle_distance(a.psi.unwrap() - b.psi.unwrap(), 0.3) < 1e-9);
        } else {
            assert!(diff(b.psi, a.psi) < 1e-9);
        }
    }
    // the perturbed chain has its own, distinct representation, and it still
    // pins the coordinates down
    let gb = build_graph(&s, Level::Backbone, 10.0).unwrap();
    let gm = build_graph(&moved, Level::Backbone, 10.0).unwrap();
    if gb.edges() == gm.edges() {
        let d = gr_distance(&geometric_representation(&gb).unwrap(), &geometric_representation(&gm).unwrap()).unwrap();
        assert!(d.max > 1e-3);
    }
    assert!(verify_reconstruction(&gm, 1e-6).unwrap().verdict);
}

fn assert_same_tuple(a: &EdgeGeometry, b: &EdgeGeometry) {
    assert_eq!(a.seq_dist, b.seq_dist);
    assert!((a.base.d - b.base.d).abs() < 1e-9);
    for (x, y) in a.base.angles().iter().zip(b.base.angles()) {
        assert!(angle_distance(*x, y) < 1e-9);
    }
    match (&a.euler, &b.euler) {
        (Some(x), Some(y)) => {
            for (p, q) in x.angles().iter().zip(y.angles()) {
                assert!(angle_distance(*p, q) < 1e-9);
            }
        }
        (None, None) => {}
        _ => panic!("Euler presence differs"),
    }
}

#[test]
fn chain_order_swap_relabels_representation() {
    let s = synthetic_structure(&SyntheticSpec {
        chain_lengths: vec![14, 9],
        seed: 8,
        alphabet: Vec::new(),
    });
    let mut swapped = s.clone();
    swapped.chains.reverse();
    let (na, nb) = (14, 9);
    let relabel = |i: usize| if i < na { i + nb } else { i - na };
    let config = ModelConfig::default();
    for level in Level::ALL {
        let g = build_graph(&s, level, 10.0).unwrap();
        let h = build_graph(&swapped, level, 10.0).unwrap();
        let (ga, gb) = (geometric_representation(&g).unwrap(), geometric_representation(&h).unwrap());
        assert_eq!(ga.edges.len(), gb.edges.len());
        for e in &ga.edges {
            let f = gb.edges.iter().find(|f| (f.i, f.j) == (relabel(e.i), relabel(e.j))).unwrap();
            assert_same_tuple(e, f);
        }
        for n in &ga.nodes {
            assert_eq!(n.chi, gb.nodes[relabel(n.index)].chi);
        }
        let model = Model::new(&config, level).unwrap();
        let (oa, ob) = (model.forward(&g, &ga).unwrap(), model.forward(&h, &gb).unwrap());
        let scale = oa.iter().fold(1e-300f64, |m, x| m.max(x.abs()));
        for (x, y) in oa.iter().zip(&ob) {
            assert!((x - y).abs() / scale < 1e-9, "{level}: {x} vs {y}");
        }
    }
}
