//! `singlet`: fusion queries, fusion tables, verification suites and
//! induction to the triplet algebra, with JSON or TSV output.

mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use singlet_core::oracle::Oracle;
use singlet_core::triplet::induce;
use singlet_core::{fusion, Error, FormalSum, Indecomposable, Params};

use output::{sum_json, triplet_json};

const EXIT_USAGE: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "singlet",
    version,
    about = "Fusion rules for singlet vertex operator algebra modules",
    long_about = "Fusion rules for singlet vertex operator algebra modules.\n\n\
        Labels use the grammar KIND:r,s[,n] with KIND one of M (simple), P (projective cover), \
        F (Fock module) or FJ (Jordan-block Fock module, s = p, block size n).\n\n\
        Exit codes: 0 success, 2 usage or validation error, 3 engine mismatch or verification failure.\n\
        No command uses randomness; SINGLET_FUSION_SEED is ignored."
)]
struct Cli {
    /// Write results to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse two modules.
    Fuse {
        #[arg(long)]
        p: i64,
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Engine::Closed)]
        engine: Engine,
    },
    /// Fusion table of all simple and projective labels with r in a range.
    Table {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        rmin: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        rmax: i64,
        #[arg(long, value_enum, default_value_t = Engine::Closed)]
        engine: Engine,
    },
    /// Run consistency checks and print a summary.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        /// Comma-separated list of p values.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        p: Vec<i64>,
        /// Half-width of the r window.
        #[arg(long, default_value_t = 2)]
        rwin: i64,
    },
    /// Induce a singlet module to the triplet algebra.
    Induce {
        #[arg(long)]
        p: i64,
        label: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Closed,
    Oracle,
    Both,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Closed => "closed",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        }
    }
}

/// A failed command: message for stderr and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::InvalidLabel(_) | Error::Unsupported(_) => EXIT_USAGE,
            Error::NegativeMultiplicity { .. } | Error::NonConvergent(_) | Error::IllConditioned { .. } => EXIT_FAILURE,
        };
        Self { code, message: e.to_string() }
    }
}

/// Rendered output plus whether it reports a mismatch.
struct Report {
    body: String,
    failed: bool,
}

struct Fused {
    closed: Option<FormalSum>,
    oracle: Option<FormalSum>,
}

impl Fused {
    fn agrees(&self) -> bool {
        match (&self.closed, &self.oracle) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn primary(&self) -> &FormalSum {
        self.closed.as_ref().or(self.oracle.as_ref()).expect("at least one engine ran")
    }
}

fn run_engine(engine: Engine, params: Params, oracle: &Oracle, a: &Indecomposable, b: &Indecomposable) -> Result<Fused, Error> {
    let closed = match engine {
        Engine::Closed | Engine::Both => Some(fusion::fuse_indecomposable(params, a, b)?),
        Engine::Oracle => None,
    };
    let oracle = match engine {
        Engine::Oracle | Engine::Both => Some(oracle.fuse_indecomposable(a, b)?),
        Engine::Closed => None,
    };
    Ok(Fused { closed, oracle })
}

fn cmd_fuse(p: i64, left: &str, right: &str, engine: Engine, format: Format) -> Result<Report, Failure> {
    let params = Params::new(p)?;
    let a = Indecomposable::parse(params, left)?;
    let b = Indecomposable::parse(params, right)?;
    let oracle = Oracle::new(params);
    let fused = run_engine(engine, params, &oracle, &a, &b)?;
    let failed = !fused.agrees();
    let body = match format {
        Format::Json => {
            let mut v = json!({ "schema": 1, "terms": sum_json(fused.primary()) });
            if engine == Engine::Both {
                v["match"] = json!(!failed);
                if failed {
                    v["closed"] = json!(sum_json(fused.closed.as_ref().unwrap()));
                    v["oracle"] = json!(sum_json(fused.oracle.as_ref().unwrap()));
                }
            }
            output::to_line(&v)
        }
        Format::Tsv => {
            let mut line = format!("{a}\t{b}\t{}", fused.primary());
            if engine == Engine::Both {
                line.push_str(if failed { "\tmismatch" } else { "\tmatch" });
            }
            line + "\n"
        }
    };
    Ok(Report { body, failed })
}

fn table_labels(params: Params, rmin: i64, rmax: i64) -> Vec<Indecomposable> {
    let p = params.p();
    let mut labels: Vec<Indecomposable> = (rmin..=rmax)
        .flat_map(|r| {
            (1..=p).map(move |s| Indecomposable::simple(params, r, s)).chain(
                (1..p).map(move |s| Indecomposable::proj(params, r, s)),
            )
        })
        .map(|x| x.expect("labels in range are valid"))
        .collect();
    labels.sort();
    labels
}

fn cmd_table(p: i64, rmin: i64, rmax: i64, engine: Engine, format: Format) -> Result<Report, Failure> {
    let params = Params::new(p)?;
    let labels = table_labels(params, rmin, rmax);
    let oracle = Oracle::new(params);
    let pairs: Vec<(Indecomposable, Indecomposable)> =
        labels.iter().flat_map(|a| labels.iter().map(move |b| (*a, *b))).collect();
    let rows: Vec<Fused> = pairs
        .par_iter()
        .map(|(a, b)| run_engine(engine, params, &oracle, a, b))
        .collect::<Result<_, _>>()?;
    let failed = rows.iter().any(|f| !f.agrees());

    let body = match format {
        Format::Json => {
            let rows: Vec<_> = pairs
                .iter()
                .zip(&rows)
                .map(|((a, b), f)| {
                    let mut v = json!({ "left": a.to_string(), "right": b.to_string(), "terms": sum_json(f.primary()) });
                    if engine == Engine::Both {
                        v["match"] = json!(f.agrees());
                    }
                    v
                })
                .collect();
            let labels: Vec<String> = labels.iter().map(ToString::to_string).collect();
            output::to_line(&json!({
                "schema": 1,
                "p": p,
                "engine": engine.name(),
                "labels": labels,
                "rows": rows,
                "match": !failed,
            }))
        }
        Format::Tsv => {
            let mut s = String::from(if engine == Engine::Both { "left\tright\tproduct\tmatch\n" } else { "left\tright\tproduct\n" });
            for ((a, b), f) in pairs.iter().zip(&rows) {
                s.push_str(&format!("{a}\t{b}\t{}", f.primary()));
                if engine == Engine::Both {
                    s.push_str(if f.agrees() { "\tmatch" } else { "\tmismatch" });
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Report { body, failed })
}

fn cmd_induce(p: i64, label: &str, format: Format) -> Result<Report, Failure> {
    let params = Params::new(p)?;
    let x = Indecomposable::parse(params, label)?;
    let t = induce(params, &x)?;
    let body = match format {
        Format::Json => {
            let mut v = triplet_json(&t);
            v.as_object_mut().unwrap().insert("schema".into(), json!(1));
            if t.is_extended(params) {
                v["extended"] = json!(true);
            }
            output::to_line(&v)
        }
        Format::Tsv => format!("{x}\t{t}{}\n", if t.is_extended(params) { "\textended" } else { "" }),
    };
    Ok(Report { body, failed: false })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Fuse { p, left, right, engine } => cmd_fuse(*p, left, right, *engine, cli.format),
        Command::Table { p, rmin, rmax, engine } => cmd_table(*p, *rmin, *rmax, *engine, cli.format),
        Command::Verify { suite, p, rwin } => {
            if *rwin < 0 {
                return Err(Failure::usage("--rwin must be non-negative"));
            }
            let ps = p.iter().map(|&p| Params::new(p)).collect::<Result<Vec<_>, _>>()?;
            let summary = verify::run(*suite, &ps, *rwin);
            let body = match cli.format {
                Format::Json => output::to_line(&summary.to_json()),
                Format::Tsv => summary.to_tsv(),
            };
            Ok(Report { body, failed: !summary.passed() })
        }
        Command::Induce { p, label } => cmd_induce(*p, label, cli.format),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    let write_err = |e: std::io::Error| Failure::usage(format!("cannot write output: {e}"));
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(write_err),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(write_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = run(&cli).and_then(|report| {
        emit(&cli, &report.body)?;
        Ok(report.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: verification failed");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
