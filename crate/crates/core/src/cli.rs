//! The `pronet` command line: `featurize`, `verify` and `bench`.
//!
//! Every failure maps to one exit code (see [`ExitCode`]) and is reported on
//! stderr as a single JSON object `{"error", "code", "message"}`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::completeness::{invariance_fuzz, verify_reconstruction, CompletenessError};
use crate::geometry::{geometric_representation, gr_to_json, GeometryError};
use crate::graph::{build_graph, GraphError, Level, DEFAULT_CUTOFF};
use crate::model::run_bench;
use crate::structure::{parse_structure, Format, Structure, StructureError};
use crate::synthetic::synthetic_chain;

#[derive(Debug, Parser)]
#[command(name = "pronet", version, about = "Complete SE(3)-invariant protein geometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the geometric representation of a structure as JSON.
    Featurize(FeaturizeArgs),
    /// Check invariance under random rigid motions and reconstruction from the representation.
    Verify(VerifyArgs),
    /// Count 1-hop and 2-hop messages and time the 1-hop representation.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Aa,
    Backbone,
    Allatom,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Aa => Level::AminoAcid,
            LevelArg::Backbone => Level::Backbone,
            LevelArg::Allatom => Level::AllAtom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Invariance,
    Completeness,
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    #[arg(long, value_enum, default_value = "allatom")]
    pub level: LevelArg,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: f64,
    /// PDB file, or the JSON structure format if the name ends in `.json`.
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// All three levels when omitted.
    #[arg(long, value_enum)]
    pub level: Option<LevelArg>,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: f64,
    #[arg(long, conflicts_with = "synthetic")]
    pub input: Option<PathBuf>,
    /// Use a generated chain of this many residues instead of `--input`.
    #[arg(long)]
    pub synthetic: Option<u32>,
    /// Both checks when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    /// Defaults to 1e-9 for invariance and 1e-6 Å for completeness.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 500)]
    pub n: u32,
    /// Target mean degree, or exact degree with `--regular`.
    #[arg(long, default_value_t = 20)]
    pub k: u32,
    #[arg(long)]
    pub regular: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Ok = 0,
    Usage = 2,
    Io = 3,
    MalformedRecord = 4,
    UnknownResidue = 5,
    MissingBackboneAtom = 6,
    EmptyStructure = 7,
    AtomRequirementViolated = 8,
    Geometry = 9,
    Reconstruction = 10,
    VerificationFailed = 11,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Completeness(#[from] CompletenessError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Io { .. } => ExitCode::Io,
            CliError::Structure(e) => structure_code(e),
            CliError::Graph(e) => graph_code(e),
            CliError::Geometry(_) => ExitCode::Geometry,
            CliError::Completeness(e) => match e {
                CompletenessError::Graph(g) => graph_code(g),
                CompletenessError::Geometry(_) => ExitCode::Geometry,
                _ => ExitCode::Reconstruction,
            },
            CliError::Verification(_) => ExitCode::VerificationFailed,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            ExitCode::Ok => "ok",
            ExitCode::Usage => "usage",
            ExitCode::Io => "io",
            ExitCode::MalformedRecord => "malformed_record",
            ExitCode::UnknownResidue => "unknown_residue",
            ExitCode::MissingBackboneAtom => "missing_backbone_atom",
            ExitCode::EmptyStructure => "empty_structure",
            ExitCode::AtomRequirementViolated => "atom_requirement_violated",
            ExitCode::Geometry => "geometry",
            ExitCode::Reconstruction => "reconstruction",
            ExitCode::VerificationFailed => "verification_failed",
        }
    }

    /// One-line JSON report for stderr.
    pub fn report(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "code": self.exit_code() as i32,
            "message": self.to_string(),
        })
        .to_string()
    }
}

fn structure_code(e: &StructureError) -> ExitCode {
    match e {
        StructureError::MalformedRecord { .. } => ExitCode::MalformedRecord,
        StructureError::UnknownResidue { .. } => ExitCode::UnknownResidue,
        StructureError::MissingBackboneAtom(_) => ExitCode::MissingBackboneAtom,
    }
}

fn graph_code(e: &GraphError) -> ExitCode {
    match e {
        GraphError::EmptyStructure => ExitCode::EmptyStructure,
        GraphError::AtomRequirementViolated { .. } => ExitCode::AtomRequirementViolated,
        GraphError::InvalidCutoff(_) => ExitCode::Usage,
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Reads a structure, rejecting any residue without N, CA and C.
pub fn load_structure(path: &Path) -> Result<Structure, CliError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
        _ => Format::PdbSubset,
    };
    Ok(parse_structure(&bytes, format)?.into_strict()?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_cutoff(cutoff: f64) -> Result<(), CliError> {
    if cutoff.is_finite() && cutoff > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--cutoff must be positive, got {cutoff}")))
    }
}

pub fn cmd_featurize(args: &FeaturizeArgs) -> Result<(), CliError> {
    check_cutoff(args.cutoff)?;
    let structure = load_structure(&args.input)?;
    let graph = build_graph(&structure, args.level.into(), args.cutoff)?;
    let gr = geometric_representation(&graph)?;
    for issue in &gr.issues {
        log::warn!("{:?}: {}", issue.site, issue.error);
    }
    emit(&gr_to_json(&gr), args.output.as_deref())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    check_cutoff(args.cutoff)?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    let structure = match (&args.input, args.synthetic) {
        (Some(path), _) => load_structure(path)?,
        (None, Some(n)) => synthetic_chain(n as usize, args.seed),
        (None, None) => return Err(CliError::Usage("verify needs --input or --synthetic N".into())),
    };
    let levels: Vec<Level> = match args.level {
        Some(l) => vec![l.into()],
        None => Level::ALL.to_vec(),
    };
    let modes: Vec<Mode> = match args.mode {
        Some(m) => vec![m],
        None => vec![Mode::Invariance, Mode::Completeness],
    };

    let mut report = String::new();
    let mut failures = Vec::new();
    for &level in &levels {
        for &mode in &modes {
            match mode {
                Mode::Invariance => {
                    let tol = args.tol.unwrap_or(1e-9);
                    let seeds = args.seed..args.seed + args.trials as u64;
                    let r = invariance_fuzz(&structure, level, args.cutoff, seeds)?;
                    let pass = r.worst.max < tol;
                    writeln!(
                        report,
                        "{:<10} invariance    trials {:>5}  max gr_distance {:.3e}  tol {tol:.1e}  worst seed {}  {}",
                        level.as_str(),
                        r.trials,
                        r.worst.max,
                        r.worst_seed,
                        verdict(pass)
                    )
                    .unwrap();
                    if !pass {
                        failures.push(format!("{level} invariance: {:.3e} >= {tol:e}, worst seed {}", r.worst.max, r.worst_seed));
                    }
                }
                Mode::Completeness => {
                    let tol = args.tol.unwrap_or(1e-6);
                    let graph = build_graph(&structure, level, args.cutoff)?;
                    let r = verify_reconstruction(&graph, tol)?;
                    writeln!(
                        report,
                        "{:<10} completeness  atoms  {:>5}  aligned rmsd    {:.3e}  tol {tol:.1e}  seed {}  {}",
                        level.as_str(),
                        r.atoms_compared,
                        r.aligned_rmsd,
                        args.seed,
                        verdict(r.verdict)
                    )
                    .unwrap();
                    if !r.verdict {
                        failures.push(format!("{level} completeness: rmsd {:.3e} >= {tol:e}, seed {}", r.aligned_rmsd, args.seed));
                    }
                }
            }
        }
    }
    print!("{report}");
    if let Some(path) = &args.output {
        std::fs::write(path, &report).map_err(io_err(path))?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.join("; ")))
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// The bench table as printed by `pronet bench`.
pub fn bench_table(args: &BenchArgs) -> String {
    let rows = run_bench(args.n as usize, args.k as usize, args.regular, args.seed);
    let mut out = String::from("level          n  cutoff  mean_deg    one_hop    two_hop    ratio   gr_ms\n");
    for r in rows {
        let ratio = r.counts.ratio().map_or("-".to_string(), |x| format!("{x:.4}"));
        writeln!(
            out,
            "{:<10} {:>5} {:>7.3} {:>9.3} {:>10} {:>10} {:>8} {:>7.3}",
            r.level.as_str(),
            r.n,
            r.cutoff,
            r.mean_degree,
            r.counts.one_hop,
            r.counts.two_hop,
            ratio,
            r.gr_seconds * 1e3
        )
        .unwrap();
    }
    out
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    emit(&bench_table(args), args.output.as_deref())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Featurize(a) => cmd_featurize(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

/// Parses `std::env::args`, runs, and returns the process exit code.
pub fn main_with_args() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::Ok as i32,
        Err(e) => {
            eprintln!("{}", e.report());
            e.exit_code() as i32
        }
    }
}
