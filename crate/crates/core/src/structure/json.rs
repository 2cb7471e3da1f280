//! JSON structure format:
//! `{"chains": [{"id", "residues": [{"aa", "seq", "atoms": [{"name", "xyz": [x, y, z]}]}]}]}`.

use serde::{Deserialize, Serialize};

use super::{assemble, valid_atom_name, Atom, Parsed, RawResidue, Structure, StructureError};
use crate::chemistry::AminoAcid;
use crate::frame::Vec3;

#[derive(Serialize, Deserialize)]
struct StructureDoc {
    chains: Vec<ChainDoc>,
}

#[derive(Serialize, Deserialize)]
struct ChainDoc {
    id: String,
    residues: Vec<ResidueDoc>,
}

#[derive(Serialize, Deserialize)]
struct ResidueDoc {
    aa: String,
    seq: i32,
    atoms: Vec<AtomDoc>,
}

#[derive(Serialize, Deserialize)]
struct AtomDoc {
    name: String,
    xyz: [f64; 3],
}

pub fn read_json(input: &[u8]) -> Result<Parsed, StructureError> {
    let doc: StructureDoc =
        serde_json::from_slice(input).map_err(|e| StructureError::MalformedRecord {
            location: format!("line {}", e.line()),
            reason: e.to_string(),
        })?;
    let mut raw = Vec::new();
    for (ci, chain) in doc.chains.into_iter().enumerate() {
        for (ri, res) in chain.residues.into_iter().enumerate() {
            let location = format!("chains[{ci}].residues[{ri}]");
            let aa = AminoAcid::from_code3(&res.aa).map_err(|_| StructureError::UnknownResidue {
                location: location.clone(),
                name: res.aa.clone(),
            })?;
            let mut atoms = Vec::with_capacity(res.atoms.len());
            for a in res.atoms {
                if !valid_atom_name(&a.name) {
                    return Err(StructureError::MalformedRecord {
                        location,
                        reason: format!("invalid atom name {:?}", a.name),
                    });
                }
                if a.xyz.iter().any(|c| !c.is_finite()) {
                    return Err(StructureError::MalformedRecord {
                        location,
                        reason: format!("non-finite coordinate for {}", a.name),
                    });
                }
                atoms.push(Atom::new(a.name, Vec3::from(a.xyz)));
            }
            raw.push(RawResidue {
                chain: chain.id.clone(),
                aa,
                seq_index: res.seq,
                atoms,
            });
        }
    }
    assemble(raw)
}

pub fn write_json(structure: &Structure) -> String {
    let doc = StructureDoc {
        chains: structure
            .chains
            .iter()
            .map(|c| ChainDoc {
                id: c.id.clone(),
                residues: c
                    .residues
                    .iter()
                    .map(|r| ResidueDoc {
                        aa: r.aa.code3().to_string(),
                        seq: r.seq_index,
                        atoms: r
                            .atoms
                            .iter()
                            .map(|a| AtomDoc {
                                name: a.name.clone(),
                                xyz: [a.position.x, a.position.y, a.position.z],
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("structure serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_document() {
        let text = r#"{"chains":[{"id":"A","residues":[
            {"aa":"GLY","seq":1,"atoms":[
                {"name":"CA","xyz":[1,2,3]},{"name":"N","xyz":[0,0,0]},
                {"name":"C","xyz":[2,2,2]}]}]}]}"#;
        let s = read_json(text.as_bytes()).unwrap().into_strict().unwrap();
        let r = &s.chains[0].residues[0];
        assert_eq!(r.atoms[0].name, "N");
        assert_eq!(r.atoms[1].position, Vec3::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            read_json(b"{\"chains\": ["),
            Err(StructureError::MalformedRecord { .. })
        ));
        let unknown = r#"{"chains":[{"id":"A","residues":[{"aa":"MSE","seq":1,"atoms":[]}]}]}"#;
        assert!(matches!(
            read_json(unknown.as_bytes()),
            Err(StructureError::UnknownResidue { .. })
        ));
        let missing = r#"{"chains":[{"id":"A","residues":[{"aa":"GLY","seq":1,"atoms":[{"name":"N","xyz":[0,0,0]}]}]}]}"#;
        let parsed = read_json(missing.as_bytes()).unwrap();
        assert!(parsed.structure.is_empty());
        assert_eq!(parsed.rejected[0].missing, vec!["CA", "C"]);
    }
}
