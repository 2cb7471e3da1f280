//! Parsed protein structures and the readers that produce them.

mod json;
mod pdb;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chemistry::AminoAcid;
use crate::frame::{Frame, Vec3};
use crate::geometry::GeometryError;

pub use json::{read_json, write_json};
pub use pdb::{read_pdb, write_pdb};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub name: String,
    pub position: Vec3,
}

impl Atom {
    pub fn new(name: impl Into<String>, position: Vec3) -> Self {
        Atom {
            name: name.into(),
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residue {
    pub aa: AminoAcid,
    pub seq_index: i32,
    /// Canonical order for `aa`, backbone first.
    pub atoms: Vec<Atom>,
}

impl Residue {
    pub fn atom(&self, name: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.name == name)
    }

    pub fn position(&self, name: &str) -> Option<Vec3> {
        self.atom(name).map(|a| a.position)
    }

    pub fn ca(&self) -> Option<Vec3> {
        self.position("CA")
    }

    /// Backbone atoms (N, CA, C) that are absent.
    pub fn missing_backbone(&self) -> Vec<&'static str> {
        ["N", "CA", "C"]
            .into_iter()
            .filter(|n| self.atom(n).is_none())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub id: String,
    pub residues: Vec<Residue>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Structure {
    pub chains: Vec<Chain>,
}

impl Structure {
    pub fn residue_count(&self) -> usize {
        self.chains.iter().map(|c| c.residues.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.residue_count() == 0
    }

    pub fn residues(&self) -> impl Iterator<Item = &Residue> {
        self.chains.iter().flat_map(|c| c.residues.iter())
    }

    pub fn atoms_mut(&mut self) -> impl Iterator<Item = &mut Atom> {
        self.chains
            .iter_mut()
            .flat_map(|c| c.residues.iter_mut())
            .flat_map(|r| r.atoms.iter_mut())
    }

    /// Every coordinate of the structure in chain/residue/atom order.
    pub fn coordinates(&self) -> Vec<Vec3> {
        self.residues()
            .flat_map(|r| r.atoms.iter().map(|a| a.position))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    PdbSubset,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueId {
    pub chain: String,
    pub seq_index: i32,
}

impl fmt::Display for ResidueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.chain, self.seq_index)
    }
}

/// A residue excluded during parsing because it lacks backbone atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedResidue {
    pub id: ResidueId,
    pub aa: AminoAcid,
    pub missing: Vec<&'static str>,
}

impl fmt::Display for RejectedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} missing {}", self.aa, self.id, self.missing.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StructureError {
    #[error("{location}: malformed record: {reason}")]
    MalformedRecord { location: String, reason: String },
    #[error("{location}: unknown residue {name:?}")]
    UnknownResidue { location: String, name: String },
    #[error("residues missing backbone atoms: {}", list_rejected(.0))]
    MissingBackboneAtom(Vec<RejectedResidue>),
}

fn list_rejected(r: &[RejectedResidue]) -> String {
    r.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}

/// Parse result: the accepted structure plus every residue that was excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub structure: Structure,
    pub rejected: Vec<RejectedResidue>,
}

impl Parsed {
    /// Fails with [`StructureError::MissingBackboneAtom`] if anything was rejected.
    pub fn into_strict(self) -> Result<Structure, StructureError> {
        if self.rejected.is_empty() {
            Ok(self.structure)
        } else {
            Err(StructureError::MissingBackboneAtom(self.rejected))
        }
    }
}

pub fn parse_structure(input: &[u8], format: Format) -> Result<Parsed, StructureError> {
    match format {
        Format::PdbSubset => read_pdb(input),
        Format::Json => read_json(input),
    }
}

/// Raw residue as collected by a reader, before canonicalization.
pub(crate) struct RawResidue {
    pub chain: String,
    pub aa: AminoAcid,
    pub seq_index: i32,
    pub atoms: Vec<Atom>,
}

/// Groups raw residues into chains, sorts atoms canonically, drops atom names
/// that are not heavy atoms of the residue (hydrogens, OXT) and rejects
/// residues without N/CA/C.
pub(crate) fn assemble(raw: Vec<RawResidue>) -> Result<Parsed, StructureError> {
    let mut chains: Vec<Chain> = Vec::new();
    let mut rejected = Vec::new();
    let mut last_seq: Vec<Option<i32>> = Vec::new();

    for r in raw {
        let chain_pos = match chains.iter().position(|c| c.id == r.chain) {
            Some(p) => p,
            None => {
                chains.push(Chain {
                    id: r.chain.clone(),
                    residues: Vec::new(),
                });
                last_seq.push(None);
                chains.len() - 1
            }
        };
        if let Some(prev) = last_seq[chain_pos] {
            if r.seq_index <= prev {
                return Err(StructureError::MalformedRecord {
                    location: format!("chain {} residue {}", r.chain, r.seq_index),
                    reason: format!("sequence index not increasing (previous {prev})"),
                });
            }
        }
        last_seq[chain_pos] = Some(r.seq_index);

        let mut seen = HashSet::new();
        let mut atoms: Vec<(usize, Atom)> = r
            .atoms
            .into_iter()
            .filter_map(|a| r.aa.atom_rank(&a.name).map(|rank| (rank, a)))
            .filter(|(rank, _)| seen.insert(*rank))
            .collect();
        atoms.sort_by_key(|(rank, _)| *rank);
        let residue = Residue {
            aa: r.aa,
            seq_index: r.seq_index,
            atoms: atoms.into_iter().map(|(_, a)| a).collect(),
        };
        let missing = residue.missing_backbone();
        if missing.is_empty() {
            chains[chain_pos].residues.push(residue);
        } else {
            rejected.push(RejectedResidue {
                id: ResidueId {
                    chain: r.chain,
                    seq_index: r.seq_index,
                },
                aa: r.aa,
                missing,
            });
        }
    }
    chains.retain(|c| !c.residues.is_empty());
    Ok(Parsed {
        structure: Structure { chains },
        rejected,
    })
}

pub(crate) fn valid_atom_name(name: &str) -> bool {
    !name.is_empty()
        && name.len() <= 4
        && name
            .chars()
            .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
}

/// Expresses every atom of `residue` in `frame`'s local coordinates.
pub fn residue_local_template(
    residue: &Residue,
    frame: &Frame,
) -> Result<Vec<(String, Vec3)>, GeometryError> {
    frame.check_orthonormal()?;
    Ok(residue
        .atoms
        .iter()
        .map(|a| (a.name.clone(), frame.to_local(&a.position)))
        .collect())
}

/// Inverse of [`residue_local_template`].
pub fn place_template(template: &[(String, Vec3)], frame: &Frame) -> Vec<Atom> {
    template
        .iter()
        .map(|(name, local)| Atom::new(name.clone(), frame.to_world(local)))
        .collect()
}
