use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pronet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pronet")).args(args).output().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn featurize_single_alanine() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ala.json");
    let input = fixture("alanine.pdb");
    let o = pronet(&["featurize", "--level", "allatom", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["level"], "all_atom");
    assert_eq!(v["edges"].as_array().unwrap().len(), 0);
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 1);
    assert_eq!(nodes[0]["aa"], "ALA");
    assert_eq!(nodes[0]["chi"].as_array().unwrap().len(), 0);
    assert_eq!(nodes[0]["chi_mask"], 0);
}

#[test]
fn featurize_is_byte_identical_and_schema_ordered() {
    let input = fixture("tripeptide.pdb");
    let run = || pronet(&["featurize", "--level", "backbone", "--input", input.to_str().unwrap()]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let keys = ["\"i\"", "\"j\"", "\"seq_dist\"", "\"d\"", "\"theta\"", "\"phi\"", "\"tau\"", "\"euler\"", "\"degenerate\""];
    let first_edge = &text[text.find("\"edges\"").unwrap()..];
    let positions: Vec<usize> = keys.iter().map(|k| first_edge.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    // 17 significant digits: one before the point, sixteen after
    let d = &first_edge[first_edge.find("\"d\":").unwrap() + 4..];
    let d = &d[..d.find(',').unwrap()];
    let mantissa = d.split('e').next().unwrap();
    assert_eq!(mantissa.split('.').nth(1).unwrap().len(), 16, "{d}");
}

#[test]
fn featurize_error_codes() {
    for (name, code) in [
        ("empty.pdb", 7),
        ("bad_coordinate.pdb", 4),
        ("unknown_residue.pdb", 5),
        ("missing_backbone.pdb", 6),
    ] {
        let input = fixture(name);
        let o = pronet(&["featurize", "--input", input.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        let report: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(report["code"], code);
    }
    assert_eq!(pronet(&["featurize", "--input", "/does/not/exist.pdb"]).status.code(), Some(3));
    assert_eq!(pronet(&["featurize", "--level", "residue", "--input", "x"]).status.code(), Some(2));
    let json = fixture("tripeptide.pdb");
    let args = ["featurize", "--cutoff", "-1", "--input", json.to_str().unwrap()];
    assert_eq!(pronet(&args).status.code(), Some(2));
}

#[test]
fn verify_invariance_and_completeness() {
    let o = pronet(&["verify", "--mode", "invariance", "--trials", "100", "--synthetic", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 3);
    let o = pronet(&["verify", "--mode", "completeness", "--level", "backbone", "--synthetic", "40", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_reports_unattainable_tolerance() {
    let o = pronet(&["verify", "--mode", "invariance", "--level", "aa", "--synthetic", "30", "--trials", "20", "--tol", "1e-18"]);
    assert_eq!(o.status.code(), Some(11));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("worst seed"), "{err}");
    assert_eq!(pronet(&["verify", "--synthetic", "10", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(pronet(&["verify", "--synthetic", "10", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(pronet(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_reads_input_files() {
    let input = fixture("tripeptide.pdb");
    let o = pronet(&["verify", "--input", input.to_str().unwrap(), "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bench_tables() {
    let o = pronet(&["bench", "--regular", "--n", "100", "--k", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split_whitespace().nth(6) == Some("9.0000")));

    let o = pronet(&["bench", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    // counts are deterministic; the timing column is not
    let counts = |o: &Output| {
        stdout(o)
            .lines()
            .map(|l| l.split_whitespace().take(7).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
    };
    let args = ["bench", "--n", "120", "--k", "12", "--seed", "4"];
    assert_eq!(counts(&pronet(&args)), counts(&pronet(&args)));
}
