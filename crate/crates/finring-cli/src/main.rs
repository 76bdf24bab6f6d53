//! `finring`: construct finite rings from expressions, inspect their
//! structure, classify them across the clean-decomposition taxonomy, and run
//! the theorem suite.
//!
//! Exit codes: 0 success / all checks passed; 1 at least one theorem check
//! failed; 2 parse error; 3 construction error. `FINRING_MAX_ORDER`
//! overrides the carrier-size cap.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use finring::cache;
use finring::classify::{self, Property};
use finring::dsl;
use finring::ring::FiniteRing;
use finring::structure;
use finring::verify;

#[derive(Parser)]
#[command(
    name = "finring",
    about = "finite ring construction, classification and theorem verification",
    version
)]
struct Cli {
    /// Load the ring from a table-cache file instead of an expression
    #[arg(long, global = true, value_name = "PATH")]
    from_cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a ring and print its headline invariants
    Eval {
        expr: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate taxonomy properties (default: all) with optional witnesses
    Classify {
        expr: Option<String>,
        /// Comma-separated property names
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        /// Show witness details in text output
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// List all clean decompositions of one element
    Decompose {
        expr: Option<String>,
        #[arg(long)]
        element: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the element index-to-display table
    Elements {
        expr: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run the theorem suite over a corpus
    Verify {
        /// "all" or a comma-separated list of theorem ids
        #[arg(long, default_value = "all")]
        suite: String,
        /// JSON corpus file (defaults to the built-in corpus)
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Persist a ring's operation tables
    Cache {
        expr: String,
        #[arg(long)]
        out: PathBuf,
        /// "json" or "bin"
        #[arg(long, default_value = "json")]
        format: String,
    },
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONSTRUCT: u8 = 3;

// stdout writes ignore errors so piping into `head` ends quietly
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Builds the subject ring from `--from-cache` or the expression argument.
fn resolve_ring(
    from_cache: &Option<PathBuf>,
    expr: &Option<String>,
) -> Result<Arc<FiniteRing>, ExitCode> {
    if let Some(path) = from_cache {
        return cache::load(path).map_err(|e| fail(EXIT_CONSTRUCT, e));
    }
    let Some(text) = expr else {
        return Err(fail(
            EXIT_PARSE,
            "an expression or --from-cache <PATH> is required",
        ));
    };
    let ast = dsl::parse_expr(text).map_err(|e| fail(EXIT_PARSE, e))?;
    dsl::eval_expr(&ast).map_err(|e| fail(EXIT_CONSTRUCT, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { ref expr, json } => {
            let ring = match resolve_ring(&cli.from_cache, expr) {
                Ok(r) => r,
                Err(code) => return code,
            };
            let counts = (
                structure::idempotents(&ring).len(),
                structure::units(&ring).subset.len(),
                structure::nilpotents(&ring).len(),
                structure::jacobson_radical(&ring).len(),
                structure::center(&ring).len(),
            );
            if json {
                let payload = serde_json::json!({
                    "label": ring.label(),
                    "coords": ring.coord_doc(),
                    "order": ring.order(),
                    "zero": ring.zero(),
                    "one": ring.one(),
                    "idempotents": counts.0,
                    "units": counts.1,
                    "nilpotents": counts.2,
                    "radical": counts.3,
                    "center": counts.4,
                });
                outln!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                outln!("label:       {}", ring.label());
                outln!("coords:      {}", ring.coord_doc());
                outln!("order:       {}", ring.order());
                outln!("zero, one:   {}, {}", ring.zero(), ring.one());
                outln!("|Id(R)|:     {}", counts.0);
                outln!("|U(R)|:      {}", counts.1);
                outln!("|N(R)|:      {}", counts.2);
                outln!("|J(R)|:      {}", counts.3);
                outln!("|C(R)|:      {}", counts.4);
            }
            ExitCode::SUCCESS
        }
        Command::Classify {
            ref expr,
            ref props,
            witness,
            json,
        } => {
            let ring = match resolve_ring(&cli.from_cache, expr) {
                Ok(r) => r,
                Err(code) => return code,
            };
            let selected: Vec<Property> = if props.is_empty() {
                Property::ALL.to_vec()
            } else {
                match props.iter().map(|p| p.parse()).collect() {
                    Ok(list) => list,
                    Err(e) => return fail(EXIT_PARSE, e),
                }
            };
            let verdicts: Vec<&classify::PropertyVerdict> = selected
                .iter()
                .map(|&p| classify::has_property(&ring, p))
                .collect();
            if json {
                outln!("{}", serde_json::to_string_pretty(&verdicts).unwrap());
            } else {
                for v in verdicts {
                    match (&v.witness, witness) {
                        (Some(w), true) => outln!("{}: {} ({w:?})", v.property, v.holds),
                        _ => outln!("{}: {}", v.property, v.holds),
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Decompose {
            ref expr,
            element,
            json,
        } => {
            let ring = match resolve_ring(&cli.from_cache, expr) {
                Ok(r) => r,
                Err(code) => return code,
            };
            if element >= ring.order() as u64 {
                return fail(
                    EXIT_CONSTRUCT,
                    format!(
                        "element index {element} out of range for order {}",
                        ring.order()
                    ),
                );
            }
            let record = classify::clean_decompositions(&ring, element as u32);
            if json {
                let pairs: Vec<serde_json::Value> = record
                    .pairs
                    .iter()
                    .map(|p| {
                        serde_json::json!({
                            "idempotent": p.idempotent,
                            "idempotent_render": ring.render(p.idempotent),
                            "unit": p.unit,
                            "unit_render": ring.render(p.unit),
                            "commutes": p.commutes,
                        })
                    })
                    .collect();
                let payload = serde_json::json!({
                    "element": record.element,
                    "render": ring.render(record.element),
                    "pairs": pairs,
                    "conjugacy_partition": record.conjugacy_partition,
                });
                outln!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                outln!(
                    "element {} = {}  ({} clean pair(s))",
                    record.element,
                    ring.render(record.element),
                    record.pairs.len()
                );
                for p in &record.pairs {
                    outln!(
                        "  e = {} ({}), u = {} ({}){}",
                        p.idempotent,
                        ring.render(p.idempotent),
                        p.unit,
                        ring.render(p.unit),
                        if p.commutes { ", commuting" } else { "" }
                    );
                }
                for (i, block) in record.conjugacy_partition.iter().enumerate() {
                    outln!("  conjugacy block {i}: {block:?}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Elements { ref expr, limit } => {
            let ring = match resolve_ring(&cli.from_cache, expr) {
                Ok(r) => r,
                Err(code) => return code,
            };
            let n = limit.unwrap_or(ring.order()).min(ring.order());
            for i in 0..n {
                outln!("{i}\t{}", ring.render(i as u32));
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            ref suite,
            ref corpus,
            jobs,
            json,
        } => {
            let entries = match corpus {
                Some(path) => {
                    let text = match std::fs::read_to_string(path) {
                        Ok(t) => t,
                        Err(e) => return fail(EXIT_CONSTRUCT, e),
                    };
                    match serde_json::from_str::<Vec<verify::CorpusEntry>>(&text) {
                        Ok(entries) => entries,
                        Err(e) => return fail(EXIT_PARSE, e),
                    }
                }
                None => verify::default_corpus(),
            };
            let resolved = match verify::ResolvedCorpus::resolve(entries) {
                Ok(r) => r,
                Err(e @ verify::CorpusError::Parse { .. }) => return fail(EXIT_PARSE, e),
                Err(e) => return fail(EXIT_CONSTRUCT, e),
            };
            let report = if suite == "all" {
                verify::run_all(&resolved, jobs.max(1))
            } else {
                let ids: Vec<&str> = suite.split(',').map(str::trim).collect();
                match verify::run_selected(&resolved, ids, jobs.max(1)) {
                    Ok(r) => r,
                    Err(e) => return fail(EXIT_PARSE, e),
                }
            };
            if json {
                outln!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for entry in &report.suite {
                    let failed: Vec<&str> = entry
                        .results
                        .iter()
                        .filter(|r| !r.passed)
                        .map(|r| r.ring.as_str())
                        .collect();
                    let skipped = entry.results.iter().filter(|r| r.skipped.is_some()).count();
                    let ran = entry.results.len() - skipped;
                    if failed.is_empty() {
                        outln!("{:<16} {} check(s) passed, {} skipped", entry.theorem, ran, skipped);
                    } else {
                        outln!(
                            "{:<16} FAILED on {} of {} check(s): {}",
                            entry.theorem,
                            failed.len(),
                            ran,
                            failed.join(", ")
                        );
                        for r in entry.results.iter().filter(|r| !r.passed) {
                            if let Some(w) = &r.witness {
                                outln!("    {}: {w:?}", r.ring);
                            }
                        }
                    }
                }
                outln!(
                    "total: {} passed, {} failed, {} skipped in {} ms",
                    report.passed, report.failures, report.skipped, report.total_ms
                );
            }
            if report.failures > 0 {
                ExitCode::from(EXIT_CHECK_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Cache {
            ref expr,
            ref out,
            ref format,
        } => {
            let ring = match resolve_ring(&cli.from_cache, &Some(expr.clone())) {
                Ok(r) => r,
                Err(code) => return code,
            };
            let result = match format.as_str() {
                "json" => cache::save_json(&ring, out),
                "bin" => cache::save_binary(&ring, out),
                other => return fail(EXIT_PARSE, format!("unknown cache format '{other}'")),
            };
            match result {
                Ok(()) => {
                    outln!("wrote {} (order {})", out.display(), ring.order());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(EXIT_CONSTRUCT, e),
            }
        }
    }
}
