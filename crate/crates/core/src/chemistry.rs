//! Canonical amino-acid chemistry: heavy-atom orders, side-chain torsion
//! quadruples, and the bond tree used to rotate side chains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The 20 canonical amino acids, in alphabetical order of their 3-letter codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AminoAcid {
    Ala,
    Arg,
    Asn,
    Asp,
    Cys,
    Gln,
    Glu,
    Gly,
    His,
    Ile,
    Leu,
    Lys,
    Met,
    Phe,
    Pro,
    Ser,
    Thr,
    Trp,
    Tyr,
    Val,
}

/// Backbone heavy atoms, always the first four rows of a residue.
pub const BACKBONE_ATOMS: [&str; 4] = ["N", "CA", "C", "O"];

/// A side-chain torsion defined by four atom names.
pub type ChiQuadruple = [&'static str; 4];

/// Only the first four side-chain torsions are used downstream.
pub const MAX_CHI: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown residue name {0:?}")]
pub struct UnknownResidue(pub String);

impl AminoAcid {
    pub const ALL: [AminoAcid; 20] = [
        AminoAcid::Ala,
        AminoAcid::Arg,
        AminoAcid::Asn,
        AminoAcid::Asp,
        AminoAcid::Cys,
        AminoAcid::Gln,
        AminoAcid::Glu,
        AminoAcid::Gly,
        AminoAcid::His,
        AminoAcid::Ile,
        AminoAcid::Leu,
        AminoAcid::Lys,
        AminoAcid::Met,
        AminoAcid::Phe,
        AminoAcid::Pro,
        AminoAcid::Ser,
        AminoAcid::Thr,
        AminoAcid::Trp,
        AminoAcid::Tyr,
        AminoAcid::Val,
    ];

    /// Position in [`AminoAcid::ALL`]; used for one-hot node features.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code3(self) -> &'static str {
        use AminoAcid::*;
        match self {
            Ala => "ALA",
            Arg => "ARG",
            Asn => "ASN",
            Asp => "ASP",
            Cys => "CYS",
            Gln => "GLN",
            Glu => "GLU",
            Gly => "GLY",
            His => "HIS",
            Ile => "ILE",
            Leu => "LEU",
            Lys => "LYS",
            Met => "MET",
            Phe => "PHE",
            Pro => "PRO",
            Ser => "SER",
            Thr => "THR",
            Trp => "TRP",
            Tyr => "TYR",
            Val => "VAL",
        }
    }

    pub fn from_code3(code: &str) -> Result<Self, UnknownResidue> {
        let upper = code.trim().to_ascii_uppercase();
        AminoAcid::ALL
            .iter()
            .copied()
            .find(|aa| aa.code3() == upper)
            .ok_or(UnknownResidue(code.trim().to_string()))
    }

    /// Heavy atoms in canonical (PDB) order, backbone first.
    pub fn atom_order(self) -> &'static [&'static str] {
        use AminoAcid::*;
        match self {
            Ala => &["N", "CA", "C", "O", "CB"],
            Arg => &["N", "CA", "C", "O", "CB", "CG", "CD", "NE", "CZ", "NH1", "NH2"],
            Asn => &["N", "CA", "C", "O", "CB", "CG", "OD1", "ND2"],
            Asp => &["N", "CA", "C", "O", "CB", "CG", "OD1", "OD2"],
            Cys => &["N", "CA", "C", "O", "CB", "SG"],
            Gln => &["N", "CA", "C", "O", "CB", "CG", "CD", "OE1", "NE2"],
            Glu => &["N", "CA", "C", "O", "CB", "CG", "CD", "OE1", "OE2"],
            Gly => &["N", "CA", "C", "O"],
            His => &["N", "CA", "C", "O", "CB", "CG", "ND1", "CD2", "CE1", "NE2"],
            Ile => &["N", "CA", "C", "O", "CB", "CG1", "CG2", "CD1"],
            Leu => &["N", "CA", "C", "O", "CB", "CG", "CD1", "CD2"],
            Lys => &["N", "CA", "C", "O", "CB", "CG", "CD", "CE", "NZ"],
            Met => &["N", "CA", "C", "O", "CB", "CG", "SD", "CE"],
            Phe => &["N", "CA", "C", "O", "CB", "CG", "CD1", "CD2", "CE1", "CE2", "CZ"],
            Pro => &["N", "CA", "C", "O", "CB", "CG", "CD"],
            Ser => &["N", "CA", "C", "O", "CB", "OG"],
            Thr => &["N", "CA", "C", "O", "CB", "OG1", "CG2"],
            Trp => &[
                "N", "CA", "C", "O", "CB", "CG", "CD1", "CD2", "NE1", "CE2", "CE3", "CZ2", "CZ3",
                "CH2",
            ],
            Tyr => &[
                "N", "CA", "C", "O", "CB", "CG", "CD1", "CD2", "CE1", "CE2", "CZ", "OH",
            ],
            Val => &["N", "CA", "C", "O", "CB", "CG1", "CG2"],
        }
    }

    /// Rank of `name` in the canonical order, if it belongs to this residue.
    pub fn atom_rank(self, name: &str) -> Option<usize> {
        self.atom_order().iter().position(|a| *a == name)
    }

    /// Full side-chain torsion table, including the fifth arginine torsion.
    pub fn chi_table(self) -> &'static [ChiQuadruple] {
        use AminoAcid::*;
        match self {
            Ala | Gly => &[],
            Arg => &[
                ["N", "CA", "CB", "CG"],
                ["CA", "CB", "CG", "CD"],
                ["CB", "CG", "CD", "NE"],
                ["CG", "CD", "NE", "CZ"],
                ["CD", "NE", "CZ", "NH1"],
            ],
            Asn | Asp => &[["N", "CA", "CB", "CG"], ["CA", "CB", "CG", "OD1"]],
            Cys => &[["N", "CA", "CB", "SG"]],
            Gln | Glu => &[
                ["N", "CA", "CB", "CG"],
                ["CA", "CB", "CG", "CD"],
                ["CB", "CG", "CD", "OE1"],
            ],
            His => &[["N", "CA", "CB", "CG"], ["CA", "CB", "CG", "ND1"]],
            Ile => &[["N", "CA", "CB", "CG1"], ["CA", "CB", "CG1", "CD1"]],
            Leu | Phe | Trp | Tyr => &[["N", "CA", "CB", "CG"], ["CA", "CB", "CG", "CD1"]],
            Lys => &[
                ["N", "CA", "CB", "CG"],
                ["CA", "CB", "CG", "CD"],
                ["CB", "CG", "CD", "CE"],
                ["CG", "CD", "CE", "NZ"],
            ],
            Met => &[
                ["N", "CA", "CB", "CG"],
                ["CA", "CB", "CG", "SD"],
                ["CB", "CG", "SD", "CE"],
            ],
            Pro => &[["N", "CA", "CB", "CG"], ["CA", "CB", "CG", "CD"]],
            Ser => &[["N", "CA", "CB", "OG"]],
            Thr => &[["N", "CA", "CB", "OG1"]],
            Val => &[["N", "CA", "CB", "CG1"]],
        }
    }

    /// Bonded predecessor of a side-chain atom, walking back toward CA.
    /// Backbone atoms have no parent in this tree.
    pub fn parent_atom(self, name: &str) -> Option<&'static str> {
        SIDE_CHAIN_TREE
            .iter()
            .find(|(aa, _)| *aa == self)
            .and_then(|(_, edges)| edges.iter().find(|(child, _)| *child == name))
            .map(|(_, parent)| *parent)
    }

    /// Atoms rigidly carried by a rotation about the bond `axis_from -> axis_to`,
    /// i.e. every atom whose path back to CA passes through `axis_to`.
    pub fn distal_atoms(self, axis_to: &str) -> Vec<&'static str> {
        self.atom_order()
            .iter()
            .copied()
            .filter(|&atom| {
                let mut cursor = self.parent_atom(atom);
                while let Some(p) = cursor {
                    if p == axis_to {
                        return true;
                    }
                    cursor = self.parent_atom(p);
                }
                false
            })
            .collect()
    }
}

/// Side-chain quadruples used for featurization: the table row truncated to
/// the first four torsions.
pub fn chi_quadruples(aa: AminoAcid) -> &'static [ChiQuadruple] {
    let table = aa.chi_table();
    &table[..table.len().min(MAX_CHI)]
}

/// Same as [`chi_quadruples`] but from a 3-letter code.
pub fn chi_quadruples_for(code: &str) -> Result<&'static [ChiQuadruple], UnknownResidue> {
    AminoAcid::from_code3(code).map(chi_quadruples)
}

// (child, parent) bonds of the side-chain tree. Ring closures (PRO CD-N,
// aromatic ring closures) are omitted; the tree only decides which atoms move.
type TreeEdges = &'static [(&'static str, &'static str)];
const SIDE_CHAIN_TREE: [(AminoAcid, TreeEdges); 20] = [
    (AminoAcid::Ala, &[("CB", "CA")]),
    (
        AminoAcid::Arg,
        &[
            ("CB", "CA"),
            ("CG", "CB"),
            ("CD", "CG"),
            ("NE", "CD"),
            ("CZ", "NE"),
            ("NH1", "CZ"),
            ("NH2", "CZ"),
        ],
    ),
    (AminoAcid::Asn, &[("CB", "CA"), ("CG", "CB"), ("OD1", "CG"), ("ND2", "CG")]),
    (AminoAcid::Asp, &[("CB", "CA"), ("CG", "CB"), ("OD1", "CG"), ("OD2", "CG")]),
    (AminoAcid::Cys, &[("CB", "CA"), ("SG", "CB")]),
    (
        AminoAcid::Gln,
        &[("CB", "CA"), ("CG", "CB"), ("CD", "CG"), ("OE1", "CD"), ("NE2", "CD")],
    ),
    (
        AminoAcid::Glu,
        &[("CB", "CA"), ("CG", "CB"), ("CD", "CG"), ("OE1", "CD"), ("OE2", "CD")],
    ),
    (AminoAcid::Gly, &[]),
    (
        AminoAcid::His,
        &[
            ("CB", "CA"),
            ("CG", "CB"),
            ("ND1", "CG"),
            ("CD2", "CG"),
            ("CE1", "ND1"),
            ("NE2", "CD2"),
        ],
    ),
    (
        AminoAcid::Ile,
        &[("CB", "CA"), ("CG1", "CB"), ("CG2", "CB"), ("CD1", "CG1")],
    ),
    (
        AminoAcid::Leu,
        &[("CB", "CA"), ("CG", "CB"), ("CD1", "CG"), ("CD2", "CG")],
    ),
    (
        AminoAcid::Lys,
        &[("CB", "CA"), ("CG", "CB"), ("CD", "CG"), ("CE", "CD"), ("NZ", "CE")],
    ),
    (
        AminoAcid::Met,
        &[("CB", "CA"), ("CG", "CB"), ("SD", "CG"), ("CE", "SD")],
    ),
    (
        AminoAcid::Phe,
        &[
            ("CB", "CA"),
            ("CG", "CB"),
            ("CD1", "CG"),
            ("CD2", "CG"),
            ("CE1", "CD1"),
            ("CE2", "CD2"),
            ("CZ", "CE1"),
        ],
    ),
    (AminoAcid::Pro, &[("CB", "CA"), ("CG", "CB"), ("CD", "CG")]),
    (AminoAcid::Ser, &[("CB", "CA"), ("OG", "CB")]),
    (AminoAcid::Thr, &[("CB", "CA"), ("OG1", "CB"), ("CG2", "CB")]),
    (
        AminoAcid::Trp,
        &[
            ("CB", "CA"),
            ("CG", "CB"),
            ("CD1", "CG"),
            ("CD2", "CG"),
            ("NE1", "CD1"),
            ("CE2", "CD2"),
            ("CE3", "CD2"),
            ("CZ2", "CE2"),
            ("CZ3", "CE3"),
            ("CH2", "CZ2"),
        ],
    ),
    (
        AminoAcid::Tyr,
        &[
            ("CB", "CA"),
            ("CG", "CB"),
            ("CD1", "CG"),
            ("CD2", "CG"),
            ("CE1", "CD1"),
            ("CE2", "CD2"),
            ("CZ", "CE1"),
            ("OH", "CZ"),
        ],
    ),
    (AminoAcid::Val, &[("CB", "CA"), ("CG1", "CB"), ("CG2", "CB")]),
];

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code3())
    }
}

impl FromStr for AminoAcid {
    type Err = UnknownResidue;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AminoAcid::from_code3(s)
    }
}

impl TryFrom<String> for AminoAcid {
    type Error = UnknownResidue;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        AminoAcid::from_code3(&value)
    }
}

impl From<AminoAcid> for String {
    fn from(aa: AminoAcid) -> Self {
        aa.code3().to_string()
    }
}
