//! Side-chain torsions χ¹..χ⁴.

use crate::chemistry::{chi_quadruples, AminoAcid};
use crate::frame::dihedral;
use crate::graph::{Level, ProteinGraph};
use crate::structure::{Atom, Residue};

use super::{gr_backbone, GeometryError, GrSet};

/// Defined side-chain torsions of one residue. Bit `k` of `mask` is set iff
/// χ^(k+1) is defined; `angles` holds only the defined values, in order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChiSet {
    pub angles: Vec<f64>,
    pub mask: u8,
}

impl ChiSet {
    /// χ^(k+1), if defined.
    pub fn get(&self, k: usize) -> Option<f64> {
        if self.mask & (1 << k) == 0 {
            return None;
        }
        let idx = (self.mask & ((1u8 << k) - 1)).count_ones() as usize;
        Some(self.angles[idx])
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

/// Torsions of a residue whose atoms are given as canonical-named rows.
/// Quadruples that reference missing atoms (or are geometrically degenerate)
/// are left undefined.
pub fn chi_from_atoms(aa: AminoAcid, atoms: &[Atom]) -> ChiSet {
    let find = |name: &str| atoms.iter().find(|a| a.name == name).map(|a| a.position);
    let mut set = ChiSet::default();
    for (k, quad) in chi_quadruples(aa).iter().enumerate() {
        let pts: Option<Vec<_>> = quad.iter().map(|n| find(n)).collect();
        if let Some(p) = pts {
            if let Ok(chi) = dihedral(&p[0], &p[1], &p[2], &p[3]) {
                set.angles.push(chi);
                set.mask |= 1 << k;
            }
        }
    }
    set
}

pub fn chi_angles(residue: &Residue) -> ChiSet {
    chi_from_atoms(residue.aa, &residue.atoms)
}

/// All-atom representation: backbone representation plus per-node χ.
pub fn gr_allatom(graph: &ProteinGraph) -> Result<GrSet, GeometryError> {
    if graph.level != Level::AllAtom {
        return Err(GeometryError::LevelMismatch {
            needed: Level::AllAtom,
            got: graph.level,
        });
    }
    let mut gr = gr_backbone(graph)?;
    for node in &mut gr.nodes {
        node.chi = Some(chi_from_atoms(node.aa, &graph.positions[node.index]));
    }
    Ok(gr)
}
