mod commands;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use commands::Outcome;
use torusforge::algfile::{self, MatrixSet};
use torusforge::{Algebra, Error, Result};

const INPUT_ERROR: i32 = 2;
const MAX_DIM_VAR: &str = "TORUSFORGE_MAX_DIM";

#[derive(Parser)]
#[command(
    name = "torusforge",
    version,
    about = "Exact computations with nilpotent Lie (super)algebras"
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Algebra file.
    #[arg(required_unless_present = "batch")]
    file: Option<PathBuf>,
    /// Process every *.alg file of a directory; results are keyed by digest.
    #[arg(long, conflicts_with = "file")]
    batch: Option<PathBuf>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Check antisymmetry and the Jacobi identity.
    Validate(Input),
    /// Series, center, generators, torus rank and fingerprint.
    Analyze(Input),
    /// Derivation superalgebra.
    Der(Input),
    /// S-system and maximal diagonal torus.
    Torus(Input),
    /// Root decomposition over the diagonal torus or a given one.
    Roots {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        torus: Option<PathBuf>,
    },
    /// d-local diagonalizability test.
    Dld(Input),
    /// Semidirect sum with the diagonal torus (or a given torus).
    Extend {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        torus: Option<PathBuf>,
    },
    /// Normal form of a solvable extension whose nilradical is the leading block.
    Normalize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        nilradical_dim: usize,
    },
    /// Dimension of the adjoint cohomology in one degree.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
    },
    /// Compare the invariant fingerprints of two algebras.
    Compare { left: PathBuf, right: PathBuf },
    /// Build new algebras from old ones.
    #[command(subcommand)]
    Construct(Construct),
}

#[derive(Subcommand, Clone)]
enum Construct {
    /// Current algebra L ⊗ C for a commutative associative C.
    Tensor { lie: PathBuf, comm_assoc: PathBuf },
    /// Quotient by the ideal generated by the given vectors.
    Quotient {
        algebra: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Semidirect sum with a family of even derivations.
    Semidirect {
        algebra: PathBuf,
        #[arg(long)]
        torus: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Analyze(_) => "analyze",
            Command::Der(_) => "der",
            Command::Torus(_) => "torus",
            Command::Roots { .. } => "roots",
            Command::Dld(_) => "dld",
            Command::Extend { .. } => "extend",
            Command::Normalize { .. } => "normalize",
            Command::Cohomology { .. } => "cohomology",
            Command::Compare { .. } => "compare",
            Command::Construct(Construct::Tensor { .. }) => "construct tensor",
            Command::Construct(Construct::Quotient { .. }) => "construct quotient",
            Command::Construct(Construct::Semidirect { .. }) => "construct semidirect",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::Validate(i) | Command::Analyze(i) | Command::Der(i) | Command::Torus(i) => {
                Some(i)
            }
            Command::Dld(i) => Some(i),
            Command::Roots { input, .. }
            | Command::Extend { input, .. }
            | Command::Normalize { input, .. }
            | Command::Cohomology { input, .. } => Some(input),
            _ => None,
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn read(path: &Path) -> Result<(String, String)> {
    let bytes =
        fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let d = digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok((text, d))
}

fn load(path: &Path) -> Result<(Algebra, String)> {
    let (text, d) = read(path)?;
    let a = algfile::parse_algebra(&text).map_err(|e| in_file(path, e))?;
    Ok((a, d))
}

fn load_matrices(path: Option<&PathBuf>) -> Result<Option<MatrixSet>> {
    path.map(|p| {
        let (text, _) = read(p)?;
        algfile::parse_matrix_set(&text).map_err(|e| in_file(p, e))
    })
    .transpose()
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn max_dim() -> Result<Option<usize>> {
    match std::env::var(MAX_DIM_VAR) {
        Err(_) => Ok(None),
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| {
            Error::Validation(format!(
                "{MAX_DIM_VAR} must be a non-negative integer, got {v:?}"
            ))
        }),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ZeroTorus => commands::CHECK_FAILED,
        _ => INPUT_ERROR,
    }
}

/// Runs a single-file command. Returns the report, the exit code and a log line.
fn run_file(cmd: &Command, path: &Path) -> (Value, i32, String, Option<Algebra>) {
    let mut head = Map::new();
    head.insert("command".into(), json!(cmd.name()));
    let result = (|| -> Result<Outcome> {
        let (text, d) = read(path)?;
        head.insert("input_digest".into(), json!(d));
        if let Command::Validate(_) = cmd {
            let a = algfile::parse_table(&text).map_err(|e| in_file(path, e))?;
            return Ok(commands::validate(&a));
        }
        let a = algfile::parse_algebra(&text).map_err(|e| in_file(path, e))?;
        let limit = max_dim()?;
        match cmd {
            Command::Analyze(_) => Ok(commands::analyze(&a, limit)),
            Command::Der(_) => Ok(commands::der(&a)),
            Command::Torus(_) => Ok(commands::torus(&a)),
            Command::Roots { torus, .. } => {
                commands::roots(&a, load_matrices(torus.as_ref())?.as_ref())
            }
            Command::Dld(_) => commands::dld(&a),
            Command::Extend { torus, .. } => {
                commands::extend(&a, load_matrices(torus.as_ref())?.as_ref())
            }
            Command::Normalize { nilradical_dim, .. } => commands::normalize(&a, *nilradical_dim),
            Command::Cohomology { degree, .. } => commands::cohomology(&a, *degree, limit),
            _ => unreachable!("not a single-file command"),
        }
    })();
    finish(head, result, path)
}

fn finish(
    mut head: Map<String, Value>,
    result: Result<Outcome>,
    path: &Path,
) -> (Value, i32, String, Option<Algebra>) {
    match result {
        Ok(out) => {
            if let Value::Object(body) = out.body {
                head.extend(body);
            }
            (Value::Object(head), out.code, out.log, out.algebra)
        }
        Err(e) => {
            let log = format!("{}: {e}", path.display());
            head.insert(
                "error".into(),
                json!({ "code": e.code(), "message": e.to_string() }),
            );
            (Value::Object(head), exit_code(&e), log, None)
        }
    }
}

fn run_compare(cmd: &Command, left: &Path, right: &Path) -> (Value, i32, String, Option<Algebra>) {
    let mut head = Map::new();
    head.insert("command".into(), json!(cmd.name()));
    let result = (|| {
        let (a, da) = load(left)?;
        let (b, db) = load(right)?;
        Ok(commands::compare(&a, &da, &b, &db, max_dim()?))
    })();
    finish(head, result, left)
}

fn run_construct(cmd: &Command, c: &Construct) -> (Value, i32, String, Option<Algebra>) {
    let mut head = Map::new();
    head.insert("command".into(), json!(cmd.name()));
    let (path, result) = match c {
        Construct::Tensor { lie, comm_assoc } => (
            lie,
            (|| {
                let (l, _) = load(lie)?;
                let (text, _) = read(comm_assoc)?;
                let ca = algfile::parse_comm_assoc(&text).map_err(|e| in_file(comm_assoc, e))?;
                commands::construct_tensor(&l, &ca)
            })(),
        ),
        Construct::Quotient { algebra, ideal } => (
            algebra,
            (|| {
                let (a, _) = load(algebra)?;
                let (text, _) = read(ideal)?;
                let seeds = algfile::parse_vectors(&a, &text).map_err(|e| in_file(ideal, e))?;
                commands::construct_quotient(&a, &seeds)
            })(),
        ),
        Construct::Semidirect { algebra, torus } => (
            algebra,
            (|| {
                let (a, _) = load(algebra)?;
                let set = load_matrices(Some(torus))?.expect("path given");
                commands::construct_semidirect(&a, &set)
            })(),
        ),
    };
    finish(head, result, path)
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "alg"))
        .collect();
    files.sort();
    Ok(files)
}

fn run_batch(cmd: &Command, dir: &Path) -> (String, i32) {
    let files = match batch_files(dir) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            let v = json!({
                "command": cmd.name(),
                "error": { "code": e.code(), "message": e.to_string() },
            });
            return (render(&v), INPUT_ERROR);
        }
    };
    let outcomes: Vec<(Value, i32, String)> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|p| {
                s.spawn(move || {
                    let (v, code, log, _) = run_file(cmd, p);
                    (v, code, log)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut results = BTreeMap::new();
    let mut worst = 0;
    for (path, (mut report, code, log)) in files.iter().zip(outcomes) {
        eprintln!("{log}");
        worst = worst.max(code);
        let key = match report.get("input_digest").and_then(Value::as_str) {
            Some(d) => d.to_string(),
            None => format!("unreadable:{}", path.display()),
        };
        if let Value::Object(m) = &mut report {
            m.shift_remove("command");
            m.shift_remove("input_digest");
        }
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned());
        results.insert(key, json!({ "file": name, "exit": code, "report": report }));
    }
    let v = json!({ "command": cmd.name(), "results": results });
    (render(&v), worst)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> (String, i32) {
    let cmd = &cli.command;
    if let Some(Input {
        batch: Some(dir), ..
    }) = cmd.input()
    {
        return run_batch(cmd, dir);
    }
    let (report, code, log, algebra) = match cmd {
        Command::Compare { left, right } => run_compare(cmd, left, right),
        Command::Construct(c) => run_construct(cmd, c),
        _ => {
            let path = cmd
                .input()
                .and_then(|i| i.file.as_ref())
                .expect("clap requires a file or --batch");
            run_file(cmd, path)
        }
    };
    eprintln!("{log}");
    // Commands that build an algebra print the algebra file itself.
    let text = match algebra {
        Some(a) => algfile::algebra_to_string(&a),
        None => render(&report),
    };
    (text, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    let written = match &cli.output {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(INPUT_ERROR as u8);
    }
    ExitCode::from(code as u8)
}
