//! Deterministic protein-like test structures.
//!
//! Chains are grown atom by atom from internal coordinates (bond length, bond
//! angle, torsion) with ideal backbone geometry, φ/ψ drawn around common
//! Ramachandran basins, and uniformly random side-chain torsions. Growth is
//! confined to a sphere of protein-like density and kept free of Cα clashes,
//! so chains fold into compact globules. Consecutive Cα atoms end up ~3.8 Å apart and `i, i+2`
//! pairs stay under 7.5 Å.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chemistry::{chi_quadruples, AminoAcid};
use crate::frame::Vec3;
use crate::structure::{Atom, Chain, Residue, Structure};

const N_CA: f64 = 1.458;
const CA_C: f64 = 1.525;
const C_N: f64 = 1.329;
const C_O: f64 = 1.231;
const ANGLE_N_CA_C: f64 = 111.2;
const ANGLE_CA_C_N: f64 = 116.2;
const ANGLE_C_N_CA: f64 = 121.7;
const ANGLE_CA_C_O: f64 = 120.5;

/// Places `d` so that `|cd| = bond`, `∠bcd = angle` and the torsion
/// `a–b–c–d` equals `torsion` (radians).
pub fn place_atom(a: &Vec3, b: &Vec3, c: &Vec3, bond: f64, angle: f64, torsion: f64) -> Vec3 {
    let bc = (c - b).normalize();
    let n = (b - a).cross(&bc).normalize();
    let m = n.cross(&bc);
    let local = Vec3::new(
        -bond * angle.cos(),
        bond * angle.sin() * torsion.cos(),
        bond * angle.sin() * torsion.sin(),
    );
    c + bc * local.x + m * local.y + n * local.z
}

#[derive(Debug, Clone, Copy)]
enum Torsion {
    /// χ^(k+1) plus an offset in degrees.
    Chi(usize, f64),
    Fixed(f64),
}

struct Placement {
    atom: &'static str,
    refs: [&'static str; 3],
    bond: f64,
    angle: f64,
    torsion: Torsion,
}

const fn p(atom: &'static str, refs: [&'static str; 3], bond: f64, angle: f64, torsion: Torsion) -> Placement {
    Placement {
        atom,
        refs,
        bond,
        angle,
        torsion,
    }
}

use Torsion::{Chi, Fixed};

fn side_chain_recipe(aa: AminoAcid) -> Vec<Placement> {
    use AminoAcid::*;
    let cb = p("CB", ["C", "N", "CA"], 1.530, 110.5, Fixed(-122.6));
    let g1 = |name, bond| p(name, ["N", "CA", "CB"], bond, 113.8, Chi(0, 0.0));
    let mut out = match aa {
        Gly => return Vec::new(),
        Ala => vec![],
        Arg => vec![
            g1("CG", 1.52),
            p("CD", ["CA", "CB", "CG"], 1.52, 111.5, Chi(1, 0.0)),
            p("NE", ["CB", "CG", "CD"], 1.46, 112.0, Chi(2, 0.0)),
            p("CZ", ["CG", "CD", "NE"], 1.33, 124.5, Chi(3, 0.0)),
            p("NH1", ["CD", "NE", "CZ"], 1.33, 120.0, Fixed(0.0)),
            p("NH2", ["CD", "NE", "CZ"], 1.33, 120.0, Fixed(180.0)),
        ],
        Asn | Asp => {
            let second = if aa == Asn { "ND2" } else { "OD2" };
            vec![
                g1("CG", 1.52),
                p("OD1", ["CA", "CB", "CG"], 1.23, 120.5, Chi(1, 0.0)),
                p(second, ["CA", "CB", "CG"], 1.25, 117.0, Chi(1, 180.0)),
            ]
        }
        Cys => vec![g1("SG", 1.81)],
        Gln | Glu => {
            let second = if aa == Gln { "NE2" } else { "OE2" };
            vec![
                g1("CG", 1.52),
                p("CD", ["CA", "CB", "CG"], 1.52, 112.6, Chi(1, 0.0)),
                p("OE1", ["CB", "CG", "CD"], 1.23, 120.5, Chi(2, 0.0)),
                p(second, ["CB", "CG", "CD"], 1.25, 117.0, Chi(2, 180.0)),
            ]
        }
        His => vec![
            g1("CG", 1.50),
            p("ND1", ["CA", "CB", "CG"], 1.38, 122.7, Chi(1, 0.0)),
            p("CD2", ["CA", "CB", "CG"], 1.36, 131.0, Chi(1, 180.0)),
            p("CE1", ["CB", "CG", "ND1"], 1.32, 109.0, Fixed(180.0)),
            p("NE2", ["CB", "CG", "CD2"], 1.37, 107.0, Fixed(180.0)),
        ],
        Ile => vec![
            g1("CG1", 1.53),
            p("CG2", ["N", "CA", "CB"], 1.53, 110.4, Chi(0, -120.0)),
            p("CD1", ["CA", "CB", "CG1"], 1.52, 113.9, Chi(1, 0.0)),
        ],
        Leu => vec![
            g1("CG", 1.53),
            p("CD1", ["CA", "CB", "CG"], 1.52, 110.5, Chi(1, 0.0)),
            p("CD2", ["CA", "CB", "CG"], 1.52, 110.5, Chi(1, 120.0)),
        ],
        Lys => vec![
            g1("CG", 1.52),
            p("CD", ["CA", "CB", "CG"], 1.52, 111.6, Chi(1, 0.0)),
            p("CE", ["CB", "CG", "CD"], 1.52, 111.7, Chi(2, 0.0)),
            p("NZ", ["CG", "CD", "CE"], 1.49, 111.9, Chi(3, 0.0)),
        ],
        Met => vec![
            g1("CG", 1.52),
            p("SD", ["CA", "CB", "CG"], 1.81, 112.7, Chi(1, 0.0)),
            p("CE", ["CB", "CG", "SD"], 1.79, 100.5, Chi(2, 0.0)),
        ],
        Phe | Tyr => {
            let mut ring = vec![
                g1("CG", 1.50),
                p("CD1", ["CA", "CB", "CG"], 1.39, 120.7, Chi(1, 0.0)),
                p("CD2", ["CA", "CB", "CG"], 1.39, 120.7, Chi(1, 180.0)),
                p("CE1", ["CB", "CG", "CD1"], 1.39, 120.7, Fixed(180.0)),
                p("CE2", ["CB", "CG", "CD2"], 1.39, 120.7, Fixed(180.0)),
                p("CZ", ["CG", "CD1", "CE1"], 1.39, 120.0, Fixed(0.0)),
            ];
            if aa == Tyr {
                ring.push(p("OH", ["CD1", "CE1", "CZ"], 1.38, 120.0, Fixed(180.0)));
            }
            ring
        }
        Pro => vec![
            g1("CG", 1.50),
            p("CD", ["CA", "CB", "CG"], 1.51, 105.0, Chi(1, 0.0)),
        ],
        Ser => vec![g1("OG", 1.42)],
        Thr => vec![
            g1("OG1", 1.43),
            p("CG2", ["N", "CA", "CB"], 1.52, 110.5, Chi(0, -120.0)),
        ],
        Trp => vec![
            g1("CG", 1.50),
            p("CD1", ["CA", "CB", "CG"], 1.37, 127.0, Chi(1, 0.0)),
            p("CD2", ["CA", "CB", "CG"], 1.43, 126.6, Chi(1, 180.0)),
            p("NE1", ["CB", "CG", "CD1"], 1.38, 110.2, Fixed(180.0)),
            p("CE2", ["CB", "CG", "CD2"], 1.41, 107.2, Fixed(180.0)),
            p("CE3", ["CB", "CG", "CD2"], 1.40, 133.9, Fixed(0.0)),
            p("CZ2", ["CG", "CD2", "CE2"], 1.40, 122.3, Fixed(180.0)),
            p("CZ3", ["CG", "CD2", "CE3"], 1.39, 118.8, Fixed(180.0)),
            p("CH2", ["CD2", "CE2", "CZ2"], 1.37, 117.5, Fixed(0.0)),
        ],
        Val => vec![
            g1("CG1", 1.53),
            p("CG2", ["N", "CA", "CB"], 1.53, 110.5, Chi(0, 120.0)),
        ],
    };
    out.insert(0, cb);
    out
}

/// Builds a residue on the given backbone with side-chain torsions `chi`
/// (radians, one per entry of the χ table up to four; missing entries are 0).
pub fn build_residue(aa: AminoAcid, seq_index: i32, backbone: [Vec3; 4], chi: &[f64]) -> Residue {
    let mut atoms: Vec<Atom> = ["N", "CA", "C", "O"]
        .iter()
        .zip(backbone)
        .map(|(n, p)| Atom::new(*n, p))
        .collect();
    for step in side_chain_recipe(aa) {
        let get = |name: &str| atoms.iter().find(|a| a.name == name).unwrap().position;
        let [a, b, c] = step.refs.map(get);
        let torsion = match step.torsion {
            Chi(k, off) => chi.get(k).copied().unwrap_or(0.0) + off.to_radians(),
            Fixed(deg) => deg.to_radians(),
        };
        let pos = place_atom(&a, &b, &c, step.bond, step.angle.to_radians(), torsion);
        atoms.push(Atom::new(step.atom, pos));
    }
    atoms.sort_by_key(|a| aa.atom_rank(&a.name).unwrap());
    Residue {
        aa,
        seq_index,
        atoms,
    }
}

/// Options for [`synthetic_structure`].
#[derive(Debug, Clone)]
pub struct SyntheticSpec {
    pub chain_lengths: Vec<usize>,
    pub seed: u64,
    /// Restrict residue types (e.g. all-alanine). Empty means all 20.
    pub alphabet: Vec<AminoAcid>,
}

impl SyntheticSpec {
    pub fn chain(length: usize, seed: u64) -> Self {
        SyntheticSpec {
            chain_lengths: vec![length],
            seed,
            alphabet: Vec::new(),
        }
    }
}

/// Single chain `A` of `length` residues.
pub fn synthetic_chain(length: usize, seed: u64) -> Structure {
    synthetic_structure(&SyntheticSpec::chain(length, seed))
}

pub fn synthetic_structure(spec: &SyntheticSpec) -> Structure {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let alphabet: &[AminoAcid] = if spec.alphabet.is_empty() {
        &AminoAcid::ALL
    } else {
        &spec.alphabet
    };
    let total: usize = spec.chain_lengths.iter().sum();
    let globule = Globule {
        center: Vec3::zeros(),
        radius: globule_radius(total),
    };
    let mut chains = Vec::new();
    let mut placed: Vec<Vec3> = Vec::new();
    for (ci, &len) in spec.chain_lengths.iter().enumerate() {
        let id = char::from(b'A' + (ci % 26) as u8).to_string();
        let start = if placed.is_empty() {
            globule.center
        } else {
            // the least crowded of a few points halfway out
            (0..16)
                .map(|_| {
                    let dir = Vec3::from_fn(|_, _| rng.random_range(-1.0..1.0f64));
                    globule.center + dir.normalize() * 0.5 * globule.radius
                })
                .min_by_key(|p| placed.iter().filter(|q| (p - *q).norm() < 6.0).count())
                .unwrap()
        };
        chains.push(grow_chain(&mut rng, len, alphabet, id, start, &globule, &mut placed));
    }
    Structure { chains }
}

/// Sphere holding `n` residues at roughly protein density, from the
/// empirical radius of gyration `Rg ≈ 2.2·n^0.38` Å of globular proteins
/// (a uniform ball has `R = √(5/3)·Rg`).
fn globule_radius(n: usize) -> f64 {
    (5.0f64 / 3.0).sqrt() * 2.2 * (n.max(1) as f64).powf(0.38)
}

struct Globule {
    center: Vec3,
    radius: f64,
}

const CANDIDATES: usize = 48;
const CLASH: f64 = 4.5;
const CROWD: f64 = 7.0;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Basin {
    Helix,
    Strand,
    Polyproline,
    LeftHelix,
}

impl Basin {
    fn draw(rng: &mut ChaCha8Rng) -> Basin {
        match rng.random_range(0..10) {
            0..=3 => Basin::Helix,
            4..=6 => Basin::Strand,
            7..=8 => Basin::Polyproline,
            _ => Basin::LeftHelix,
        }
    }

    /// (φ, ψ) in radians around the basin center.
    fn draw_phi_psi(self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let (phi, psi, w) = match self {
            Basin::Helix => (-57.0, -47.0, 12.0),
            Basin::Strand => (-120.0, 130.0, 20.0),
            Basin::Polyproline => (-75.0, 145.0, 15.0),
            Basin::LeftHelix => (57.0, 47.0, 10.0),
        };
        let phi: f64 = phi + rng.random_range(-w..w);
        let psi: f64 = psi + rng.random_range(-w..w);
        (phi.to_radians(), psi.to_radians())
    }
}

/// Grows a chain from ideal backbone geometry. Each step draws a few
/// candidate (ψ, ω, φ₊₁) sets and keeps the one whose next Cα avoids Cα
/// clashes, stays inside the globule and lands in the least crowded spot.
fn grow_chain(
    rng: &mut ChaCha8Rng,
    len: usize,
    alphabet: &[AminoAcid],
    id: String,
    start: Vec3,
    globule: &Globule,
    placed: &mut Vec<Vec3>,
) -> Chain {
    let mut residues = Vec::with_capacity(len);
    if len == 0 {
        return Chain { id, residues };
    }
    let mut basin = Basin::draw(rng);
    let mut n = start;
    let mut ca = start + Vec3::new(N_CA, 0.0, 0.0);
    let t = ANGLE_N_CA_C.to_radians();
    let mut c = ca + Vec3::new(-CA_C * t.cos(), CA_C * t.sin(), 0.0);
    for k in 0..len {
        placed.push(ca);
        let mut next = None;
        if k + 1 < len {
            let mut best: Option<(f64, [Vec3; 3], f64, Basin)> = None;
            for _ in 0..CANDIDATES {
                let next_basin = if rng.random_bool(0.25) { Basin::draw(rng) } else { basin };
                let (_, psi_k) = basin.draw_phi_psi(rng);
                let (phi_next, psi_ahead) = next_basin.draw_phi_psi(rng);
                let omega = (180.0 + rng.random_range(-6.0..6.0f64)).to_radians();
                let nn = place_atom(&n, &ca, &c, C_N, ANGLE_CA_C_N.to_radians(), psi_k);
                let nca = place_atom(&ca, &c, &nn, N_CA, ANGLE_C_N_CA.to_radians(), omega);
                let nc = place_atom(&c, &nn, &nca, CA_C, ANGLE_N_CA_C.to_radians(), phi_next);
                // look one residue further so φ₊₁ is scored too
                let an = place_atom(&nn, &nca, &nc, C_N, ANGLE_CA_C_N.to_radians(), psi_ahead);
                let aca = place_atom(&nca, &nc, &an, N_CA, ANGLE_C_N_CA.to_radians(), PI);
                let penalty = |p: &Vec3, skip: usize| {
                    let (mut clashes, mut crowd) = (0, 0);
                    for q in &placed[..placed.len() - skip] {
                        let d = (p - q).norm();
                        clashes += (d < CLASH) as usize;
                        crowd += (d < CROWD) as usize;
                    }
                    let r = (p - globule.center).norm();
                    1e3 * clashes as f64 + 10.0 * (r - globule.radius).max(0.0) + 0.5 * crowd as f64
                };
                let score = penalty(&nca, 1) + penalty(&aca, 0);
                if best.as_ref().is_none_or(|b| score < b.0) {
                    best = Some((score, [nn, nca, nc], psi_k, next_basin));
                }
            }
            next = best;
        }
        let psi_k = next.as_ref().map_or_else(|| basin.draw_phi_psi(rng).1, |b| b.2);
        let o = place_atom(&n, &ca, &c, C_O, ANGLE_CA_C_O.to_radians(), psi_k + PI);
        let aa = alphabet[rng.random_range(0..alphabet.len())];
        let chi: Vec<f64> = (0..chi_quadruples(aa).len())
            .map(|_| rng.random_range(-PI..PI))
            .collect();
        residues.push(build_residue(aa, k as i32 + 1, [n, ca, c, o], &chi));
        if let Some((_, [nn, nca, nc], _, next_basin)) = next {
            n = nn;
            ca = nca;
            c = nc;
            basin = next_basin;
        }
    }
    Chain { id, residues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{angle_distance, dihedral};

    #[test]
    fn nerf_hits_internal_coordinates() {
        let a = Vec3::new(0.3, -1.2, 0.5);
        let b = Vec3::new(0.0, 0.0, 0.0);
        let c = Vec3::new(1.5, 0.1, -0.2);
        for torsion in [-2.5, -0.4, 0.0, 1.0, 3.0] {
            let d = place_atom(&a, &b, &c, 1.4, 1.9, torsion);
            assert!(((d - c).norm() - 1.4).abs() < 1e-12);
            let ang = (b - c).angle(&(d - c));
            assert!((ang - 1.9).abs() < 1e-12);
            assert!(angle_distance(dihedral(&a, &b, &c, &d).unwrap(), torsion) < 1e-12);
        }
    }

    #[test]
    fn deterministic_and_well_spaced() {
        let s1 = synthetic_chain(60, 9);
        let s2 = synthetic_chain(60, 9);
        assert_eq!(s1, s2);
        assert_ne!(s1, synthetic_chain(60, 10));
        let ca: Vec<Vec3> = s1.residues().map(|r| r.ca().unwrap()).collect();
        for w in ca.windows(3) {
            let d1 = (w[1] - w[0]).norm();
            assert!((d1 - 3.8).abs() < 0.1, "{d1}");
            assert!((w[2] - w[0]).norm() < 7.5);
        }
    }

    #[test]
    fn residues_are_complete_and_canonical() {
        let s = synthetic_chain(200, 3);
        for r in s.residues() {
            let names: Vec<_> = r.atoms.iter().map(|a| a.name.as_str()).collect();
            assert_eq!(names, r.aa.atom_order(), "{}", r.aa);
        }
    }
}
