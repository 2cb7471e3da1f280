//! Side-chain torsions of every residue type, placed and recovered.

use pronet_geom::geometry::chi_angles;
use pronet_geom::synthetic::build_residue;
use pronet_geom::{chi_quadruples, AminoAcid, Vec3};

fn main() {
    let backbone = [
        Vec3::new(-0.525, 1.363, 0.0),
        Vec3::zeros(),
        Vec3::new(1.525, 0.0, 0.0),
        Vec3::new(2.15, -1.06, 0.0),
    ];
    let chi = [1.1, -0.6, 2.4, -2.9];
    for aa in AminoAcid::ALL {
        let n = chi_quadruples(aa).len();
        let res = build_residue(aa, 1, backbone, &chi[..n]);
        let got: Vec<String> = chi_angles(&res).angles.iter().map(|c| format!("{c:+.3}")).collect();
        println!("{aa} {n} atoms={:>2} chi=[{}]", res.atoms.len(), got.join(", "));
    }
}
