//! JSON-in/JSON-out front end: computation commands over colligations and
//! lattices, seeded verification suites, and DOT emission for tree balls.
//!
//! Exit codes: 0 success, 1 property failure, 2 input error.

use clap::{Args, Parser, Subcommand};
use collig::arith::context::PAdicContext;
use collig::arith::Rat;
use collig::building::charmap::char_lattice_m;
use collig::building::checks::{boundary_limit_check, tree_map_check};
use collig::colligation::charfun::{char_boundary, char_fun};
use collig::colligation::divisor::divisor;
use collig::colligation::invariants::invariants;
use collig::colligation::quotient::quotient_equal;
use collig::colligation::realize::realize;
use collig::colligation::Colligation;
use collig::io::{
    self, divisor_to_doc, format_matrix, parse_rational, signature_to_doc, ColligationDoc,
    JobDoc, QuasiLatticeDoc, RatFunMatDoc,
};
use collig::lattice::dot::{ball_to_dot, image_to_dot};
use collig::lattice::quasi::QuasiLattice;
use collig::lattice::tree::{ball, TreeVertex};
use collig::verify::{run_suite, suite_names};
use serde::Serialize;
use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "collig", version, about = "Exact colligation algebra and p-adic tree maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Input JSON document; "-" or omitted reads stdin.
    #[arg(long)]
    input: Option<String>,
    /// Output path; omitted writes stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Transfer function of a colligation, optionally evaluated at a point.
    CharField {
        #[command(flatten)]
        io: IoArgs,
        /// Evaluation point "num/den"; omitted returns the symbolic matrix.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Blockwise product of two colligations.
    Product {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Truncated invariant signature.
    Invariants {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
    /// Exceptional divisor.
    Divisor {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Quotient equality of two colligations, with a witness when unequal.
    EqualQuotient {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Realize a scalar rational function as a colligation.
    Realize {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Characteristic map applied to a lattice.
    CharTree {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Boundary value at an m x m matrix.
    CharBoundary {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Map a ball of the tree and report edge behavior; emits two DOT files.
    BallMap {
        #[command(flatten)]
        io: IoArgs,
        /// Prime for the tree (overrides COLLIG_P and the document).
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        radius: Option<u64>,
        /// Path for the source-ball DOT file.
        #[arg(long)]
        dot_source: Option<String>,
        /// Path for the image DOT file.
        #[arg(long)]
        dot_image: Option<String>,
    },
    /// Convergence of the characteristic map toward a boundary point.
    BoundaryLimit {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        j_max: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
    },
    /// Run a named verification suite.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Suite name; use "list" to print the known suites.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance count override.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    PropertyFailure(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::PropertyFailure(msg)) => {
            eprintln!("property failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(io_args: &IoArgs) -> Result<String, CliError> {
    match io_args.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("reading {path}: {e}"))),
    }
}

fn write_output(io_args: &IoArgs, body: &str) -> Result<(), CliError> {
    match io_args.output.as_deref() {
        None => {
            let mut out = std::io::stdout();
            out.write_all(body.as_bytes())
                .and_then(|_| out.write_all(b"\n"))
                .map_err(|e| CliError::input(format!("writing stdout: {e}")))
        }
        Some(path) => fs::write(path, format!("{body}\n"))
            .map_err(|e| CliError::input(format!("writing {path}: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn parse_job(io_args: &IoArgs, expected_ops: &[&str]) -> Result<JobDoc, CliError> {
    let raw = read_input(io_args)?;
    let job = io::parse_job_json(&raw)?;
    if let Some(op) = &job.op {
        if !expected_ops.contains(&op.as_str()) {
            return Err(CliError::input(format!(
                "document op {op:?} does not match this command (expected one of {expected_ops:?})"
            )));
        }
    }
    Ok(job)
}

fn need_colligation(job: &JobDoc) -> Result<Colligation, CliError> {
    job.colligation
        .as_ref()
        .ok_or_else(|| CliError::input("missing \"colligation\""))?
        .to_colligation()
        .map_err(CliError::from)
}

fn need_second(job: &JobDoc) -> Result<Colligation, CliError> {
    job.colligation2
        .as_ref()
        .ok_or_else(|| CliError::input("missing \"colligation2\""))?
        .to_colligation()
        .map_err(CliError::from)
}

fn need_lattice(job: &JobDoc) -> Result<QuasiLattice, CliError> {
    job.lattice
        .as_ref()
        .ok_or_else(|| CliError::input("missing \"lattice\""))?
        .to_lattice()
        .map_err(CliError::from)
}

/// Prime resolution: flag beats document beats COLLIG_P.
fn resolve_prime(flag: Option<u64>, doc: Option<u64>) -> Result<PAdicContext, CliError> {
    let p = flag
        .or(doc)
        .or_else(|| {
            std::env::var("COLLIG_P")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
        })
        .ok_or_else(|| CliError::input("no prime given (flag --p, document, or COLLIG_P)"))?;
    PAdicContext::new(p).map_err(|e| CliError::input(e.to_string()))
}

fn parse_lambda(s: &str) -> Result<Rat, CliError> {
    parse_rational(s).map_err(CliError::from)
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::CharField { io: ioa, lambda } => {
            let job = parse_job(&ioa, &["char-field"])?;
            let g = need_colligation(&job)?;
            if g.block_count() != 1 {
                return Err(CliError::input("char-field needs a single-block colligation"));
            }
            let lambda = match (lambda, &job.params.lambda) {
                (Some(s), _) => Some(parse_lambda(&s)?),
                (None, Some(s)) => Some(parse_lambda(s)?),
                (None, None) => None,
            };
            let chi = char_fun(&g);
            match lambda {
                None => write_output(&ioa, &to_json(&RatFunMatDoc::from_ratfunmat(&chi))),
                Some(x) => {
                    let value = chi
                        .eval(&x)
                        .map_err(|e| CliError::input(format!("evaluation at {x}: {e}")))?;
                    write_output(&ioa, &to_json(&format_matrix(&value)))
                }
            }
        }
        Command::Product { io: ioa } => {
            let job = parse_job(&ioa, &["product"])?;
            let g = need_colligation(&job)?;
            let h = need_second(&job)?;
            let prod = g.circ(&h).map_err(|e| CliError::input(e.to_string()))?;
            write_output(&ioa, &to_json(&ColligationDoc::from_colligation(&prod)))
        }
        Command::Invariants { io: ioa, k_max } => {
            let job = parse_job(&ioa, &["invariants"])?;
            let g = need_colligation(&job)?;
            if g.block_count() != 1 {
                return Err(CliError::input("invariants need a single-block colligation"));
            }
            let k_max = job.params.k_max.unwrap_or(k_max);
            let sig = invariants(&g, k_max);
            write_output(&ioa, &to_json(&signature_to_doc(&sig)))
        }
        Command::Divisor { io: ioa } => {
            let job = parse_job(&ioa, &["divisor"])?;
            let g = need_colligation(&job)?;
            if g.block_count() != 1 {
                return Err(CliError::input("divisor needs a single-block colligation"));
            }
            write_output(&ioa, &to_json(&divisor_to_doc(&divisor(&g))))
        }
        Command::EqualQuotient { io: ioa } => {
            let job = parse_job(&ioa, &["equal-quotient"])?;
            let g = need_colligation(&job)?;
            let h = need_second(&job)?;
            if g.block_count() != 1 || h.block_count() != 1 {
                return Err(CliError::input("quotient comparison needs single-block form"));
            }
            #[derive(Serialize)]
            struct Out {
                equal: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<String>,
            }
            let cmp = quotient_equal(&g, &h);
            write_output(
                &ioa,
                &to_json(&Out {
                    equal: cmp.equal,
                    witness: cmp.witness,
                }),
            )
        }
        Command::Realize { io: ioa } => {
            let job = parse_job(&ioa, &["realize"])?;
            let w = job
                .function
                .as_ref()
                .ok_or_else(|| CliError::input("missing \"function\""))?
                .to_ratfun()?;
            let g = realize(&w).map_err(|e| CliError::input(e.to_string()))?;
            write_output(&ioa, &to_json(&ColligationDoc::from_colligation(&g)))
        }
        Command::CharTree { io: ioa } => {
            let job = parse_job(&ioa, &["char-tree", "char-lattice"])?;
            let g = need_colligation(&job)?;
            let r = need_lattice(&job)?;
            if r.dim() != 2 * g.block_count() {
                return Err(CliError::input(format!(
                    "lattice dimension {} does not match 2m = {}",
                    r.dim(),
                    2 * g.block_count()
                )));
            }
            let out = char_lattice_m(&g, &r);
            #[derive(Serialize)]
            struct Out {
                lattice: QuasiLatticeDoc,
                is_full_lattice: bool,
                subspace_rank: usize,
            }
            write_output(
                &ioa,
                &to_json(&Out {
                    lattice: QuasiLatticeDoc::from_lattice(&out.lattice),
                    is_full_lattice: out.is_full_lattice,
                    subspace_rank: out.subspace_rank,
                }),
            )
        }
        Command::CharBoundary { io: ioa } => {
            let job = parse_job(&ioa, &["char-boundary"])?;
            let g = need_colligation(&job)?;
            let s_doc = job
                .boundary
                .as_ref()
                .ok_or_else(|| CliError::input("missing \"boundary\" matrix"))?;
            let s = io::parse_matrix(s_doc)?;
            let value = char_boundary(&g, &s).map_err(|e| CliError::input(e.to_string()))?;
            write_output(&ioa, &to_json(&format_matrix(&value)))
        }
        Command::BallMap {
            io: ioa,
            p,
            radius,
            dot_source,
            dot_image,
        } => {
            let job = parse_job(&ioa, &["ball-map", "tree-check"])?;
            let g = need_colligation(&job)?;
            if g.alpha() != 1 || g.block_count() != 1 {
                return Err(CliError::input("ball-map needs corner size 1, single block"));
            }
            let ctx = resolve_prime(p, job.params.p)?;
            let radius = radius
                .or(job.params.radius)
                .ok_or_else(|| CliError::input("no radius given"))?;
            let center = TreeVertex::base(ctx, 2);
            let report = tree_map_check(&g, &center, radius);
            let vertices = ball(&center, radius);
            if let Some(path) = &dot_source {
                fs::write(path, ball_to_dot("source_ball", &vertices))
                    .map_err(|e| CliError::input(format!("writing {path}: {e}")))?;
            }
            if let Some(path) = &dot_image {
                let dot = image_to_dot(
                    "image_ball",
                    &vertices,
                    &report.image_labels,
                    &report.edge_list,
                    &report.edge_flags,
                );
                fs::write(path, dot)
                    .map_err(|e| CliError::input(format!("writing {path}: {e}")))?;
            }
            #[derive(Serialize)]
            struct Out {
                p: u64,
                radius: u64,
                vertices: usize,
                edges: usize,
                contracted: usize,
                preserved: usize,
                degenerate_vertices: usize,
                violations: Vec<(usize, usize, u64)>,
            }
            let out = Out {
                p: ctx.prime(),
                radius,
                vertices: report.vertices,
                edges: report.edges,
                contracted: report.contracted,
                preserved: report.preserved,
                degenerate_vertices: report.degenerate_vertices,
                violations: report.violations.clone(),
            };
            let body = to_json(&out);
            write_output(&ioa, &body)?;
            if !report.violations.is_empty() {
                return Err(CliError::PropertyFailure(format!(
                    "{} edge violations",
                    report.violations.len()
                )));
            }
            Ok(())
        }
        Command::BoundaryLimit {
            io: ioa,
            p,
            j_max,
            k,
        } => {
            let job = parse_job(&ioa, &["boundary-limit"])?;
            let g = need_colligation(&job)?;
            let ctx = resolve_prime(p, job.params.p)?;
            let lambda = job
                .params
                .lambda
                .as_ref()
                .ok_or_else(|| CliError::input("missing params.lambda"))?;
            let x = parse_lambda(lambda)?;
            let j_max = j_max.or(job.params.j_max).unwrap_or(12);
            let k = k.or(job.params.k).unwrap_or(4);
            let converges = boundary_limit_check(&g, ctx, &x, j_max, k)
                .map_err(|e| CliError::input(e.to_string()))?;
            #[derive(Serialize)]
            struct Out {
                p: u64,
                lambda: String,
                j_max: i64,
                k: i64,
                converges: bool,
            }
            let body = to_json(&Out {
                p: ctx.prime(),
                lambda: lambda.clone(),
                j_max,
                k,
                converges,
            });
            write_output(&ioa, &body)?;
            if !converges {
                return Err(CliError::PropertyFailure("no convergence".into()));
            }
            Ok(())
        }
        Command::Verify {
            io: ioa,
            suite,
            seed,
            count,
        } => {
            if suite == "list" {
                return write_output(&ioa, &to_json(&suite_names()));
            }
            let report = run_suite(&suite, seed, count)
                .map_err(|e| CliError::input(e.to_string()))?;
            let body = to_json(&report);
            write_output(&ioa, &body)?;
            if !report.passed() {
                return Err(CliError::PropertyFailure(format!(
                    "{} failures in suite {suite}",
                    report.failures.len()
                )));
            }
            Ok(())
        }
    }
}
