use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cwkit::c5::{relation_suite, C5Error};
use cwkit::format::{read_graph, read_weights, write_graph};
use cwkit::gen::{parse_manifest_line, sha256_hex, GenSpec};
use cwkit::kexpr::{mwis, parse, serialize, width};
use cwkit::oracle::{brute_mwis, exact_cw_leq};
use cwkit::pattern::is_class_member;
use cwkit::pipeline::{decompose_with, verify, CaseTag, Checks, PipelineError};
use cwkit::{Graph, VertexId};

const EXIT_NOT_IN_CLASS: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_STRUCTURE: u8 = 4;
const EXIT_MALFORMED: u8 = 64;

#[derive(Parser)]
#[command(name = "cwkit", version, about = "Clique-width expressions for (S_{1,2,2}, triangle)-free graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class membership with a witness when it fails.
    Check { file: String },
    /// Build, and by default verify, an expression for the graph.
    Decompose {
        file: String,
        /// Where to write the expression (`-` for stdout).
        #[arg(long)]
        out: Option<String>,
        /// Also assert every structural relation of the C5 construction.
        #[arg(long)]
        verified: bool,
    },
    /// Exit 0 iff the expression builds exactly the graph.
    Verify { graph: String, expr: String },
    /// Number of distinct labels in an expression.
    Width { expr: String },
    /// Maximum weight independent set.
    Mwis {
        graph: String,
        weights: String,
        #[arg(long, value_enum, default_value = "expr")]
        via: Via,
    },
    /// Exact clique-width questions on tiny graphs.
    Oracle {
        #[command(subcommand)]
        q: OracleCmd,
    },
    /// Print a generated graph.
    Gen {
        family: String,
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the manifest line instead of the graph.
        #[arg(long)]
        manifest: bool,
    },
    /// Decompose every instance of a corpus manifest.
    Bench { manifest: String },
    /// Set and relation dump of the C5 construction of a prime graph.
    Report { file: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Is the clique-width at most k?
    Cwle {
        file: String,
        k: usize,
        /// Where to write the certificate expression on a yes answer.
        #[arg(long)]
        cert: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Expr,
    Brute,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }

    fn malformed(message: impl ToString) -> Failure {
        Failure::new(EXIT_MALFORMED, message.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Failure {
        let code = match &e {
            PipelineError::NotInClass(_) => EXIT_NOT_IN_CLASS,
            PipelineError::EmptyGraph => EXIT_MALFORMED,
            PipelineError::C5(C5Error::NotTriangleFreeWitness(_) | C5Error::NotS122FreeWitness { .. }) => {
                EXIT_NOT_IN_CLASS
            }
            _ => EXIT_STRUCTURE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(Failure::malformed)?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes()).map_err(Failure::malformed)
    } else {
        fs::write(path, text).map_err(|e| Failure::malformed(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    read_graph(&read_input(path)?).map_err(|e| Failure::malformed(format!("{path}: {e}")))
}

fn load_expr(path: &str) -> Result<cwkit::KExpr, Failure> {
    parse(&read_input(path)?).map_err(|e| Failure::malformed(format!("{path}: {e}")))
}

fn check(file: &str) -> Outcome {
    let g = load_graph(file)?;
    let r = is_class_member(&g);
    match r.witness_line() {
        None => {
            println!("IN-CLASS");
            Ok(0)
        }
        Some(w) => {
            println!("NOT-IN-CLASS {w}");
            Ok(EXIT_NOT_IN_CLASS)
        }
    }
}

fn decompose(file: &str, out: Option<&str>, verified: bool) -> Outcome {
    let g = load_graph(file)?;
    let r = decompose_with(&g, Checks { eval: true, relations: verified })?;
    println!("CASE {}", r.case);
    if r.case == CaseTag::BipartiteUnsupported {
        return Ok(EXIT_UNSUPPORTED);
    }
    println!("WIDTH {}", r.width.unwrap_or(0));
    println!("VERIFIED {}", if r.verified { "yes" } else { "no" });
    if let (Some(path), Some(e)) = (out, &r.expr) {
        write_output(path, &format!("{}\n", serialize(e)))?;
    }
    Ok(0)
}

fn weights_for(g: &Graph, path: &str) -> Result<impl Fn(&VertexId) -> u64, Failure> {
    let w = read_weights(&read_input(path)?).map_err(|e| Failure::malformed(format!("{path}: {e}")))?;
    if let Some(unknown) = w.keys().find(|v| g.index_of(v).is_none()) {
        return Err(Failure::malformed(format!("{path}: weight for unknown vertex {unknown}")));
    }
    Ok(move |v: &VertexId| w.get(v).copied().unwrap_or(1))
}

fn run_mwis(graph: &str, weights: &str, via: Via) -> Outcome {
    let g = load_graph(graph)?;
    let w = weights_for(&g, weights)?;
    let (weight, set) = match via {
        Via::Brute => brute_mwis(&g, &w).map_err(Failure::malformed)?,
        Via::Expr => {
            let r = decompose_with(&g, Checks::default())?;
            let Some(e) = r.expr else {
                return Err(Failure::new(EXIT_UNSUPPORTED, format!("no expression ({})", r.case)));
            };
            let s = mwis(&e, &|v| Some(w(v))).map_err(Failure::malformed)?;
            (s.weight, s.set)
        }
    };
    println!("WEIGHT {weight}");
    let ids: Vec<&str> = set.iter().map(VertexId::as_str).collect();
    println!("SET {}", ids.join(" "));
    Ok(0)
}

fn cwle(file: &str, k: usize, cert: Option<&str>) -> Outcome {
    let g = load_graph(file)?;
    let d = exact_cw_leq(&g, k).map_err(Failure::malformed)?;
    println!("{}", if d.answer { "yes" } else { "no" });
    if let (Some(path), Some(e)) = (cert, &d.certificate) {
        write_output(path, &format!("{}\n", serialize(e)))?;
    }
    Ok(0)
}

fn gen(family: &str, params: &str, seed: u64, manifest: bool) -> Outcome {
    let spec = GenSpec::parse(family, params, seed).map_err(Failure::malformed)?;
    let g = spec.generate().map_err(|e| Failure::new(1, e.to_string()))?;
    if manifest {
        println!("{}", cwkit::gen::manifest_line(&spec, &g));
    } else {
        print!("{}", write_graph(&g));
    }
    Ok(0)
}

fn bench(manifest: &str) -> Outcome {
    let text = read_input(manifest)?;
    let dir = if manifest == "-" { PathBuf::from(".") } else { Path::new(manifest).parent().unwrap_or(Path::new(".")).to_path_buf() };
    let mut max_width = 0;
    let mut bad = 0;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (spec, digest) = parse_manifest_line(line).map_err(Failure::malformed)?;
        let path = dir.join("graphs").join(spec.file_name());
        let graph_text = fs::read_to_string(&path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
        if sha256_hex(&graph_text) != digest {
            println!("{spec} HASH-MISMATCH");
            bad += 1;
            continue;
        }
        let g = read_graph(&graph_text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
        let start = Instant::now();
        let r = decompose_with(&g, Checks::default());
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match r {
            Ok(r) => {
                let w = r.width.map_or("-".to_string(), |w| w.to_string());
                println!("{spec} {} {w} {} {ms:.1}ms", r.case, if r.verified { "verified" } else { "unverified" });
                max_width = max_width.max(r.width.unwrap_or(0));
                if !r.verified && r.case != CaseTag::BipartiteUnsupported {
                    bad += 1;
                }
            }
            Err(e) => {
                println!("{spec} ERROR {e}");
                bad += 1;
            }
        }
    }
    println!("MAXWIDTH {max_width}");
    Ok(if bad == 0 { 0 } else { 1 })
}

fn report(file: &str) -> Outcome {
    let g = load_graph(file)?;
    let r = relation_suite(&g).map_err(|e| Failure::from(PipelineError::from(e)))?;
    print!("{}", r.render(&g));
    Ok(if r.all_pass() { 0 } else { EXIT_STRUCTURE })
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Check { file } => check(&file),
        Cmd::Decompose { file, out, verified } => decompose(&file, out.as_deref(), verified),
        Cmd::Verify { graph, expr } => {
            let (g, e) = (load_graph(&graph)?, load_expr(&expr)?);
            let ok = verify(&g, &e);
            println!("{}", if ok { "EQUAL" } else { "DIFFERENT" });
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Width { expr } => {
            println!("{}", width(&load_expr(&expr)?).width);
            Ok(0)
        }
        Cmd::Mwis { graph, weights, via } => run_mwis(&graph, &weights, via),
        Cmd::Oracle { q: OracleCmd::Cwle { file, k, cert } } => cwle(&file, k, cert.as_deref()),
        Cmd::Gen { family, params, seed, manifest } => gen(&family, &params, seed, manifest),
        Cmd::Bench { manifest } => bench(&manifest),
        Cmd::Report { file } => report(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("cwkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
