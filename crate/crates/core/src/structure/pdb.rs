//! Fixed-column ATOM records (PDB v3.3 layout).
//!
//! Only `ATOM` records of the first model are read. Occupancy and B-factor
//! are ignored, hydrogens are skipped, and of the alternate locations only
//! blank and `A` are kept.

use std::fmt::Write as _;

use super::{assemble, valid_atom_name, Atom, Parsed, RawResidue, Structure, StructureError};
use crate::chemistry::AminoAcid;
use crate::frame::Vec3;

pub fn read_pdb(input: &[u8]) -> Result<Parsed, StructureError> {
    let text = std::str::from_utf8(input).map_err(|e| StructureError::MalformedRecord {
        location: "input".into(),
        reason: format!("not valid UTF-8: {e}"),
    })?;

    let mut raw: Vec<RawResidue> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.starts_with("ENDMDL") {
            break;
        }
        if !line.starts_with("ATOM  ") {
            continue;
        }
        let rec = parse_atom_line(line, line_no)?;
        if !(rec.alt_loc == ' ' || rec.alt_loc == 'A') || rec.is_hydrogen {
            continue;
        }
        let same = raw.last().is_some_and(|r| {
            r.chain == rec.chain && r.seq_index == rec.res_seq
        });
        if same {
            let last = raw.last_mut().unwrap();
            if last.aa != rec.aa {
                return Err(StructureError::MalformedRecord {
                    location: format!("line {line_no}"),
                    reason: format!(
                        "residue {} {} changes name from {} to {}",
                        rec.chain, rec.res_seq, last.aa, rec.aa
                    ),
                });
            }
            last.atoms.push(Atom::new(rec.name, rec.position));
        } else {
            raw.push(RawResidue {
                chain: rec.chain,
                aa: rec.aa,
                seq_index: rec.res_seq,
                atoms: vec![Atom::new(rec.name, rec.position)],
            });
        }
    }
    assemble(raw)
}

struct AtomRecord {
    name: String,
    alt_loc: char,
    aa: AminoAcid,
    chain: String,
    res_seq: i32,
    position: Vec3,
    is_hydrogen: bool,
}

fn parse_atom_line(line: &str, line_no: usize) -> Result<AtomRecord, StructureError> {
    let malformed = |reason: String| StructureError::MalformedRecord {
        location: format!("line {line_no}"),
        reason,
    };
    if !line.is_ascii() {
        return Err(malformed("non-ASCII characters".into()));
    }
    if line.len() < 54 {
        return Err(malformed(format!(
            "ATOM record has {} columns, need at least 54",
            line.len()
        )));
    }
    let col = |a: usize, b: usize| &line[a..b];

    let name = col(12, 16).trim().to_string();
    if !valid_atom_name(&name) {
        return Err(malformed(format!("invalid atom name {:?}", col(12, 16))));
    }
    let alt_loc = line.as_bytes()[16] as char;
    let res_name = col(17, 20).trim();
    let aa = AminoAcid::from_code3(res_name).map_err(|_| StructureError::UnknownResidue {
        location: format!("line {line_no}"),
        name: res_name.to_string(),
    })?;
    let chain = col(21, 22).trim().to_string();
    let res_seq: i32 = col(22, 26)
        .trim()
        .parse()
        .map_err(|_| malformed(format!("bad residue sequence number {:?}", col(22, 26))))?;
    let coord = |a: usize, b: usize, axis: &str| -> Result<f64, StructureError> {
        let v: f64 = col(a, b)
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad {axis} coordinate {:?}", col(a, b))))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(malformed(format!("non-finite {axis} coordinate")))
        }
    };
    let position = Vec3::new(coord(30, 38, "x")?, coord(38, 46, "y")?, coord(46, 54, "z")?);
    let element = line.get(76..78).map(str::trim).unwrap_or("");
    let is_hydrogen = matches!(element, "H" | "D")
        || (element.is_empty() && name.trim_start_matches(|c: char| c.is_ascii_digit()).starts_with('H'));

    Ok(AtomRecord {
        name,
        alt_loc,
        aa,
        chain,
        res_seq,
        position,
        is_hydrogen,
    })
}

/// Writes ATOM records in 8.3 fixed format. Coordinates are rounded to 1e-3 Å.
pub fn write_pdb(structure: &Structure) -> String {
    let mut out = String::new();
    let mut serial = 1;
    for chain in &structure.chains {
        let chain_id = chain.id.chars().next().unwrap_or(' ');
        for res in &chain.residues {
            for atom in &res.atoms {
                // 4-character names start in column 13, shorter ones in 14
                let name = if atom.name.len() >= 4 {
                    atom.name.clone()
                } else {
                    format!(" {}", atom.name)
                };
                let element = atom.name.chars().next().unwrap_or(' ');
                let _ = writeln!(
                    out,
                    "ATOM  {:>5} {:<4} {:>3} {}{:>4}    {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}          {:>2}",
                    serial,
                    name,
                    res.aa.code3(),
                    chain_id,
                    res.seq_index,
                    atom.position.x,
                    atom.position.y,
                    atom.position.z,
                    1.0,
                    0.0,
                    element
                );
                serial += 1;
            }
        }
        let _ = writeln!(out, "TER");
    }
    out.push_str("END\n");
    out
}
