use clap::{Parser, Subcommand};
use mvlab_core::lagrangian::{check_epsilons, check_m_k};
use mvlab_core::linalg::{PrimeField, DEFAULT_PRIME};
use mvlab_core::lusztig::{enumerate_by_height_capped, CrystalOp, LusztigDatum, DEFAULT_MAX_CELLS};
use mvlab_core::maya_bz::{mv_vertices, psi, BZDatum, Flavor, MayaDiagram, BZ_SCHEMA};
use mvlab_core::quiver_rep::{adapted_word, characterizing_root, orientation_from_maya};
use mvlab_core::suites::{run_suite, Scope, Suite, VerifyReport};
use mvlab_core::weyl_words::Rank;
use mvlab_core::Error;
use serde_json::{json, Value};
use std::io::{self, Read, Write};
use std::process::ExitCode;

const EXIT_ERROR: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_BOTTOM: u8 = 3;

/// Lusztig data, BZ data and MV polytopes for the type A crystal B(infinity).
#[derive(Parser, Debug)]
#[command(name = "mvlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Stream every Lusztig datum of rank n with entry sum at most max-height, one JSON per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_height: u32,
    },
    /// Apply an operator word such as "f1 f2 e*1", left to right, to a datum read from stdin.
    Apply {
        #[arg(long)]
        ops: String,
    },
    /// Emit the e-flavored BZ datum of a Lusztig datum read from stdin.
    Psi,
    /// Emit MV polytope vertices and half-spaces for a Lusztig or BZ datum read from stdin.
    Polytope,
    /// Describe the orientation, root and adapted word of a Maya diagram.
    Quiver {
        #[arg(long)]
        n: usize,
        /// Comma-separated members, e.g. "1,3".
        #[arg(long)]
        maya: String,
    },
    /// Compare M_K and epsilons at random points of the Lagrangian with their combinatorial values.
    Lagrangian {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run a verification suite, or "all".
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_height: Option<u32>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Outcome {
    Ok,
    Violation,
    Bottom,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({ "error": e.kind().to_string(), "detail": e.to_string().trim() }));
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match run(cli.cmd) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(EXIT_VIOLATION),
        Ok(Outcome::Bottom) => ExitCode::from(EXIT_BOTTOM),
        Err(e) => {
            emit(&json!({ "error": e.to_string() }));
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn emit(v: &impl serde::Serialize) {
    let mut out = io::stdout().lock();
    let _ = serde_json::to_writer(&mut out, v);
    let _ = writeln!(out);
}

fn max_cells() -> Result<u128, Error> {
    match std::env::var("MVLAB_MAX_CELLS") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("MVLAB_MAX_CELLS={s:?} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

fn read_stdin() -> Result<Value, Error> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
    serde_json::from_str(&s).map_err(|e| Error::Parse(format!("stdin is not JSON: {e}")))
}

fn read_datum() -> Result<LusztigDatum, Error> {
    serde_json::from_value(read_stdin()?).map_err(|e| Error::Parse(format!("bad Lusztig datum: {e}")))
}

fn run(cmd: Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Enumerate { n, max_height } => {
            let data = enumerate_by_height_capped(Rank::new(n)?, max_height, max_cells()?)?;
            let mut out = io::BufWriter::new(io::stdout().lock());
            for a in data {
                serde_json::to_writer(&mut out, &a).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(out).map_err(|e| Error::Internal(e.to_string()))?;
            }
            Ok(Outcome::Ok)
        }
        Cmd::Apply { ops } => {
            let ops = CrystalOp::parse_word(&ops)?;
            let mut cur = read_datum()?;
            for (step, &op) in ops.iter().enumerate() {
                match cur.apply(op)? {
                    Some(next) => cur = next,
                    None => {
                        emit(&json!({ "bottom": true, "step": step, "op": op.to_string(), "last": cur }));
                        return Ok(Outcome::Bottom);
                    }
                }
            }
            emit(&cur);
            Ok(Outcome::Ok)
        }
        Cmd::Psi => {
            emit(&psi(&read_datum()?)?);
            Ok(Outcome::Ok)
        }
        Cmd::Polytope => {
            let v = read_stdin()?;
            let w0 = if v.get("schema").and_then(Value::as_str) == Some(BZ_SCHEMA) {
                let m: BZDatum = serde_json::from_value(v).map_err(|e| Error::Parse(format!("bad BZ datum: {e}")))?;
                match m.flavor() {
                    Flavor::W0 => m,
                    Flavor::E => m.star(),
                }
            } else {
                let a: LusztigDatum =
                    serde_json::from_value(v).map_err(|e| Error::Parse(format!("bad Lusztig datum: {e}")))?;
                psi(&a)?.star()
            };
            let report = w0.check_axioms();
            if !report.is_ok() {
                return Err(Error::Parse(format!("not a BZ datum: {}", json!(report.violations))));
            }
            emit(&mv_vertices(&w0)?);
            Ok(Outcome::Ok)
        }
        Cmd::Quiver { n, maya } => {
            let k = MayaDiagram::parse_key(Rank::new(n)?, &maya)?;
            let omega = orientation_from_maya(&k)?;
            emit(&json!({
                "schema": "mvlab.quiver/1",
                "n": n,
                "K": k,
                "orientation": omega,
                "sinks": omega.sinks(),
                "sources": omega.sources(),
                "beta": characterizing_root(&k).map(|r| [r.i, r.j]),
                "adapted_word": adapted_word(&omega),
            }));
            Ok(Outcome::Ok)
        }
        Cmd::Lagrangian { p, seed } => {
            let a = read_datum()?;
            let field = PrimeField::new(p)?;
            let m_k = check_m_k(&a, field, seed)?;
            let eps = check_epsilons(&a, field, seed)?;
            let passed = m_k.iter().all(|r| r.matches && !r.above_generic) && eps.iter().all(|r| r.matches);
            emit(&json!({
                "schema": "mvlab.lagrangian/1",
                "p": p,
                "seed": seed,
                "passed": passed,
                "m_k": m_k,
                "epsilons": eps,
            }));
            Ok(if passed { Outcome::Ok } else { Outcome::Violation })
        }
        Cmd::Verify { suite, n, max_height, jobs } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let cap = max_cells()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            let mut ok = true;
            for s in suites {
                let scope = scope_for(s, n, max_height)?.with_cap(cap);
                let report: VerifyReport = pool.install(|| run_suite(s, &scope))?;
                eprintln!("{}: {} instances in {:.2?}", report.suite, report.instances, report.wall_time);
                ok &= report.passed;
                emit(&report);
            }
            Ok(if ok { Outcome::Ok } else { Outcome::Violation })
        }
    }
}

fn scope_for(suite: Suite, n: Option<usize>, max_height: Option<u32>) -> Result<Scope, Error> {
    match (n, max_height) {
        (Some(n), h) => Ok(Scope::single(Rank::new(n)?, h.unwrap_or(if n >= 4 { 3 } else { 5 }))),
        (None, Some(h)) => {
            let mut scope = Scope::default_for(suite);
            for entry in &mut scope.ranks {
                entry.1 = h;
            }
            Ok(scope)
        }
        (None, None) => Ok(Scope::default_for(suite)),
    }
}
