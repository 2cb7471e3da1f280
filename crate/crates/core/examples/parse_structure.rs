//! Parse a PDB file (or the bundled tripeptide) and list its residues.
//!
//! cargo run --example parse_structure -- path/to/file.pdb

use pronet_geom::{parse_structure, Format};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/tripeptide.pdb").into());
    let bytes = std::fs::read(&path).expect("readable input");
    let format = if path.ends_with(".json") { Format::Json } else { Format::PdbSubset };
    let parsed = parse_structure(&bytes, format).expect("parseable input");
    for r in &parsed.rejected {
        println!("rejected {r}");
    }
    for chain in &parsed.structure.chains {
        for res in &chain.residues {
            let names: Vec<&str> = res.atoms.iter().map(|a| a.name.as_str()).collect();
            println!("{} {:>4} {}  {}", chain.id, res.seq_index, res.aa, names.join(" "));
        }
    }
}
