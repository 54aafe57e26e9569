//! The `pcube` command line.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 when
//! the property fails or a refutation was produced, 2 on usage or parse
//! errors. Class indices follow the canonical order (by smallest edge under
//! vertex-name order).

pub mod certs;
pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::decomposer::{certify_planar_partial_cube, is_minimal_obstruction, Refutation};
use crate::expansion::{find_flaw_witness, FlawBudget};
use crate::generators::GeneratorSpec;
use crate::graph::Graph;
use crate::ops::{contract_class, expand, ExpansionError, ExpansionSpec, OpsError};
use crate::partial_cube::{recognize, theta_classes};
use crate::planarity::{faces, test_planarity, Planarity};

use certs::{
    decomposition_to_json, flaw_to_json, graph_to_json, refutation_certificate, refutation_to_json, witness_to_json,
    Certificate, CertificateFile, KuratowskiJson, PcRefutationJson, Validation,
};
use format::{parse_graph, print_graph, to_dot, GraphFile};

#[derive(Parser, Debug)]
#[command(name = "pcube", version, about = "Partial cubes and certified planarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is a partial cube.
    Recognize {
        file: PathBuf,
        /// Write a refutation certificate here.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// List the Θ-classes.
    Theta { file: PathBuf },
    /// Test planarity; a Kuratowski certificate goes to `-o`.
    Planarity {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Contract one Θ-class.
    Contract {
        file: PathBuf,
        class: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Expand along two covering isometric subgraphs.
    Expand {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        g1: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        g2: Vec<String>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Decompose a planar partial cube, or refute it.
    Certify {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Replay a decomposition certificate.
    Replay {
        cert: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check any certificate file.
    Verify { cert: PathBuf },
    /// Decide whether a partial cube is a minimal non-planar one.
    CheckObstruction { file: PathBuf },
    /// Search for a 2-face expansion that is not planar.
    FindFlaw {
        #[arg(long, default_value_t = 12)]
        max_base_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write a generated graph.
    Generate {
        family: String,
        params: Vec<u64>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write a graph in DOT format.
    ExportDot {
        file: PathBuf,
        /// Annotate nodes with a plane rotation system.
        #[arg(long)]
        embedding: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, io::Error),
    #[error("{0}: {1}")]
    Parse(PathBuf, String),
    #[error("{0}")]
    Usage(String),
}

/// Whether the checked property holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Holds,
    Fails,
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(path.into(), e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))
}

fn read_graph(path: &Path) -> Result<GraphFile, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Parse(path.into(), e.to_string()))
}

fn read_cert(path: &Path) -> Result<CertificateFile, CliError> {
    CertificateFile::from_json(&read(path)?).map_err(|e| CliError::Parse(path.into(), e.to_string()))
}

/// Writes to `path`, or standard output when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.into(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_if(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.into(), e)),
        None => Ok(()),
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Holds) => 0,
        Ok(Outcome::Fails) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Recognize { file, o } => cmd_recognize(&file, o.as_deref()),
        Command::Theta { file } => cmd_theta(&file),
        Command::Planarity { file, o } => cmd_planarity(&file, o.as_deref()),
        Command::Contract { file, class, o } => cmd_contract(&file, class, o.as_deref()),
        Command::Expand { file, g1, g2, o } => cmd_expand(&file, &g1, &g2, o.as_deref()),
        Command::Certify { file, o } => cmd_certify(&file, o.as_deref()),
        Command::Replay { cert, o } => cmd_replay(&cert, o.as_deref()),
        Command::Verify { cert } => cmd_verify(&cert),
        Command::CheckObstruction { file } => cmd_check_obstruction(&file),
        Command::FindFlaw { max_base_size, seed, max_candidates, o } => {
            let budget = FlawBudget { max_base_size, max_candidates, ..FlawBudget::default() };
            cmd_find_flaw(&budget, seed, o.as_deref())
        }
        Command::Generate { family, params, o } => cmd_generate(&family, &params, o.as_deref()),
        Command::ExportDot { file, embedding, o } => cmd_export_dot(&file, embedding, o.as_deref()),
    }
}

fn cmd_recognize(file: &Path, o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    match recognize(&graph) {
        Ok(pc) => {
            println!("{name}: partial cube of isometric dimension {}", pc.labeling.dim);
            for v in graph.vertices() {
                println!("{} {}", graph.name(v), pc.labeling.label_string(v));
            }
            Ok(Outcome::Holds)
        }
        Err(r) => {
            println!("{name}: not a partial cube: {r}");
            let file = CertificateFile::new(Certificate::PcRefutation(PcRefutationJson {
                refutation: refutation_to_json(&graph, &r),
                graph: graph_to_json(&graph),
            }));
            write_if(o, &file.to_json())?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_theta(file: &Path) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    let tp = match theta_classes(&graph) {
        Ok(tp) => tp,
        Err(e) => {
            println!("{name}: {e}");
            return Ok(Outcome::Fails);
        }
    };
    println!("{name}: {} Θ-classes", tp.len());
    for (i, class) in tp.classes().iter().enumerate() {
        let edges: Vec<String> = class
            .iter()
            .map(|&e| {
                let (u, v) = graph.edges()[e];
                format!("{}-{}", graph.name(u), graph.name(v))
            })
            .collect();
        println!("class {i}: {}", edges.join(" "));
    }
    Ok(Outcome::Holds)
}

fn cmd_planarity(file: &Path, o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    match test_planarity(&graph) {
        Planarity::Planar(emb) => {
            let count = faces(&graph, &emb).map(|f| f.len()).unwrap_or(0);
            println!("{name}: planar ({count} faces)");
            Ok(Outcome::Holds)
        }
        Planarity::NonPlanar(w) => {
            println!("{name}: not planar ({:?} subdivision)", w.kind);
            let file = CertificateFile::new(Certificate::Kuratowski(KuratowskiJson {
                witness: witness_to_json(&graph, &w),
                graph: graph_to_json(&graph),
            }));
            write_if(o, &file.to_json())?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_contract(file: &Path, class: usize, o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    let tp = match theta_classes(&graph) {
        Ok(tp) => tp,
        Err(e) => {
            eprintln!("{name}: {e}");
            return Ok(Outcome::Fails);
        }
    };
    match contract_class(&graph, &tp, class) {
        Ok(r) => {
            emit(o, &print_graph(&format!("{name}-c{class}"), &r.quotient))?;
            Ok(Outcome::Holds)
        }
        Err(OpsError::UnknownClass(c)) => {
            Err(CliError::Usage(format!("class {c} out of range ({} classes)", tp.len())))
        }
        Err(e) => {
            eprintln!("{name}: {e}");
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_expand(file: &Path, g1: &[String], g2: &[String], o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    let spec = match ExpansionSpec::from_names(graph, g1, g2) {
        Ok(s) => s,
        Err(ExpansionError::Graph(e)) => return Err(CliError::Usage(e.to_string())),
        Err(e) => {
            eprintln!("{name}: {e}");
            return Ok(Outcome::Fails);
        }
    };
    let h = expand(&spec).expect("validated spec");
    emit(o, &print_graph(&format!("{name}-x"), &h))?;
    Ok(Outcome::Holds)
}

fn cmd_certify(file: &Path, o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    match certify_planar_partial_cube(&graph) {
        Ok(cert) => {
            println!("{name}: planar partial cube, {} expansion steps", cert.steps.len());
            let file = CertificateFile::new(Certificate::Decomposition(decomposition_to_json(&cert)));
            write_if(o, &file.to_json())?;
            Ok(Outcome::Holds)
        }
        Err(r) => {
            match &r {
                Refutation::NotPartialCube(p) => println!("{name}: not a partial cube: {p}"),
                Refutation::NotPlanar(w) => println!("{name}: not planar ({:?} subdivision)", w.kind),
            }
            write_if(o, &refutation_certificate(&graph, &r).to_json())?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_replay(cert: &Path, o: Option<&Path>) -> Result<Outcome, CliError> {
    let file = read_cert(cert)?;
    if !matches!(file.body, Certificate::Decomposition(_)) {
        return Err(CliError::Usage(format!("{}: expected a decomposition, found {}", cert.display(), file.kind())));
    }
    match certs::validate(&file) {
        Validation::Valid(Some(g)) => {
            emit(o, &print_graph("replayed", &g))?;
            Ok(Outcome::Holds)
        }
        Validation::Valid(None) => unreachable!("decompositions replay to a graph"),
        Validation::Invalid(reason) => {
            eprintln!("{}: {reason}", cert.display());
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_verify(cert: &Path) -> Result<Outcome, CliError> {
    let file = read_cert(cert)?;
    match certs::validate(&file) {
        Validation::Valid(_) => {
            println!("{}: valid {} certificate", cert.display(), file.kind());
            Ok(Outcome::Holds)
        }
        Validation::Invalid(reason) => {
            println!("{}: invalid {} certificate: {reason}", cert.display(), file.kind());
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_check_obstruction(file: &Path) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    match is_minimal_obstruction(&graph) {
        Ok(true) => {
            println!("{name}: minimal obstruction");
            Ok(Outcome::Holds)
        }
        Ok(false) => {
            println!("{name}: not a minimal obstruction");
            Ok(Outcome::Fails)
        }
        Err(e) => {
            println!("{name}: {e}");
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_find_flaw(budget: &FlawBudget, seed: u64, o: Option<&Path>) -> Result<Outcome, CliError> {
    match find_flaw_witness(budget, seed) {
        Ok(w) => {
            let g = &w.spec.base;
            println!(
                "flaw witness: base with {} vertices and {} edges, {:?} subdivision in the expansion",
                g.vertex_count(),
                g.edge_count(),
                w.kuratowski.kind
            );
            emit(o, &CertificateFile::new(Certificate::FlawWitness(flaw_to_json(&w))).to_json())?;
            Ok(Outcome::Holds)
        }
        Err(e) => {
            println!("{e}");
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_generate(family: &str, params: &[u64], o: Option<&Path>) -> Result<Outcome, CliError> {
    let spec = GeneratorSpec::parse(family, params).map_err(|e| CliError::Usage(e.to_string()))?;
    let g: Graph = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
    emit(o, &print_graph(&spec.to_string(), &g))?;
    Ok(Outcome::Holds)
}

fn cmd_export_dot(file: &Path, embedding: bool, o: Option<&Path>) -> Result<Outcome, CliError> {
    let GraphFile { name, graph } = read_graph(file)?;
    if !embedding {
        emit(o, &to_dot(&name, &graph, None))?;
        return Ok(Outcome::Holds);
    }
    match test_planarity(&graph) {
        Planarity::Planar(emb) => {
            emit(o, &to_dot(&name, &graph, Some(&emb)))?;
            Ok(Outcome::Holds)
        }
        Planarity::NonPlanar(w) => {
            eprintln!("{name}: not planar ({:?} subdivision); no embedding", w.kind);
            Ok(Outcome::Fails)
        }
    }
}
