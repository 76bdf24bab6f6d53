//! Theorem-verification suite: each registered check runs over a corpus of
//! small rings and reports pass/fail with witnesses.

mod corpus;
mod theorems;

pub use corpus::default_corpus;
pub use theorems::{registry, TheoremSpec};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{Property, Witness};
use crate::dsl::{self, Expr};
use crate::ring::FiniteRing;

/// One corpus ring: a construction expression plus asserted expectations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub expr: String,
    #[serde(default)]
    pub expected: BTreeMap<Property, bool>,
    /// short derivation note per expectation
    #[serde(default)]
    pub provenance: BTreeMap<Property, String>,
}

impl CorpusEntry {
    pub fn new(id: &str, expr: &str) -> CorpusEntry {
        CorpusEntry {
            id: id.to_string(),
            expr: expr.to_string(),
            expected: BTreeMap::new(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn expect(mut self, property: Property, holds: bool, why: &str) -> CorpusEntry {
        self.expected.insert(property, holds);
        self.provenance.insert(property, why.to_string());
        self
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("entry {id}: {err}")]
    Parse { id: String, err: dsl::ParseError },
    #[error("entry {id}: {err}")]
    Eval { id: String, err: dsl::EvalError },
    #[error("unknown theorem id '{0}'")]
    UnknownTheorem(String),
}

/// A corpus entry with its ring built.
pub struct ResolvedEntry {
    pub entry: CorpusEntry,
    pub ast: Expr,
    pub ring: Arc<FiniteRing>,
}

/// Shared build cache so grid checks reuse corpus rings. Rings above the
/// retention threshold are built on demand and dropped by the caller.
pub struct RingStore {
    inner: Mutex<HashMap<String, Arc<FiniteRing>>>,
}

const STORE_RETAIN_LIMIT: usize = 4096;

impl RingStore {
    pub fn new() -> RingStore {
        RingStore {
            inner: Mutex::new(HashMap::new()),
        }
    }

    fn insert(&self, key: String, ring: Arc<FiniteRing>) {
        self.inner.lock().unwrap().insert(key, ring);
    }

    /// Builds (or returns the cached) ring for a canonical expression.
    pub fn get(&self, expr: &str) -> Result<Arc<FiniteRing>, dsl::EvalStrError> {
        if let Some(hit) = self.inner.lock().unwrap().get(expr) {
            return Ok(hit.clone());
        }
        let ast = dsl::parse_expr(expr).map_err(dsl::EvalStrError::Parse)?;
        let ring = dsl::eval_expr(&ast).map_err(dsl::EvalStrError::Eval)?;
        if ring.order() <= STORE_RETAIN_LIMIT {
            self.inner
                .lock()
                .unwrap()
                .entry(expr.to_string())
                .or_insert_with(|| ring.clone());
        }
        Ok(ring)
    }
}

impl Default for RingStore {
    fn default() -> RingStore {
        RingStore::new()
    }
}

/// The corpus with every ring constructed, plus the shared store.
pub struct ResolvedCorpus {
    pub entries: Vec<ResolvedEntry>,
    pub store: RingStore,
}

impl ResolvedCorpus {
    pub fn resolve(entries: Vec<CorpusEntry>) -> Result<ResolvedCorpus, CorpusError> {
        let store = RingStore::new();
        let mut resolved = Vec::with_capacity(entries.len());
        for entry in entries {
            let ast = dsl::parse_expr(&entry.expr).map_err(|err| CorpusError::Parse {
                id: entry.id.clone(),
                err,
            })?;
            let ring = dsl::eval_expr(&ast).map_err(|err| CorpusError::Eval {
                id: entry.id.clone(),
                err,
            })?;
            // corpus rings are retained for the whole run regardless of size
            store.insert(ast.to_string(), ring.clone());
            resolved.push(ResolvedEntry { entry, ast, ring });
        }
        Ok(ResolvedCorpus {
            entries: resolved,
            store,
        })
    }

    /// Finds a corpus ring by canonical expression string.
    pub fn by_expr(&self, canonical: &str) -> Option<&ResolvedEntry> {
        self.entries
            .iter()
            .find(|e| e.ast.to_string() == canonical)
    }
}

/// Outcome of one theorem check on one ring (or grid item).
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheckResult {
    pub ring: String,
    pub passed: bool,
    /// present iff passed = false
    pub witness: Option<Witness>,
    /// informational context on passing checks (e.g. replayed evidence)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// reason the check did not run (cap, missing base ring)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub ms: u128,
}

impl TheoremCheckResult {
    pub(crate) fn skip(ring: impl Into<String>, reason: impl Into<String>) -> TheoremCheckResult {
        TheoremCheckResult {
            ring: ring.into(),
            passed: true,
            witness: None,
            detail: None,
            skipped: Some(reason.into()),
            ms: 0,
        }
    }

    /// Runs one check, timing it; `Err` carries the failure witness.
    pub(crate) fn timed(
        ring: impl Into<String>,
        check: impl FnOnce() -> Result<Option<String>, Witness>,
    ) -> TheoremCheckResult {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => TheoremCheckResult {
                ring: ring.into(),
                passed: true,
                witness: None,
                detail,
                skipped: None,
                ms,
            },
            Err(witness) => TheoremCheckResult {
                ring: ring.into(),
                passed: false,
                witness: Some(witness),
                detail: None,
                skipped: None,
                ms,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub theorem: String,
    pub results: Vec<TheoremCheckResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryReport {
    pub suite: Vec<SuiteEntry>,
    pub failures: usize,
    pub passed: usize,
    pub skipped: usize,
    pub total_ms: u128,
}

impl SummaryReport {
    fn tally(suite: Vec<SuiteEntry>, total_ms: u128) -> SummaryReport {
        let mut failures = 0;
        let mut passed = 0;
        let mut skipped = 0;
        for entry in &suite {
            for r in &entry.results {
                if r.skipped.is_some() {
                    skipped += 1;
                } else if r.passed {
                    passed += 1;
                } else {
                    failures += 1;
                }
            }
        }
        SummaryReport {
            suite,
            failures,
            passed,
            skipped,
            total_ms,
        }
    }

    /// Copy with timings zeroed, for determinism comparisons.
    pub fn normalized(&self) -> SummaryReport {
        let mut copy = self.clone();
        copy.total_ms = 0;
        for entry in &mut copy.suite {
            for r in &mut entry.results {
                r.ms = 0;
            }
        }
        copy
    }
}

/// Runs one registered theorem over the corpus.
pub fn run_theorem(
    theorem_id: &str,
    corpus: &ResolvedCorpus,
) -> Result<Vec<TheoremCheckResult>, CorpusError> {
    let spec = registry()
        .iter()
        .find(|t| t.id == theorem_id)
        .ok_or_else(|| CorpusError::UnknownTheorem(theorem_id.to_string()))?;
    Ok((spec.run)(corpus))
}

/// Runs every registered theorem; `jobs > 1` runs theorems concurrently.
/// Reports are deterministic regardless of the job count.
pub fn run_all(corpus: &ResolvedCorpus, jobs: usize) -> SummaryReport {
    run_selected(corpus, registry().iter().map(|t| t.id), jobs)
        .expect("registry ids are always known")
}

/// Runs a chosen subset of theorems, in registry order.
pub fn run_selected<'a>(
    corpus: &ResolvedCorpus,
    ids: impl IntoIterator<Item = &'a str>,
    jobs: usize,
) -> Result<SummaryReport, CorpusError> {
    let wanted: Vec<&str> = ids.into_iter().collect();
    let specs: Vec<&TheoremSpec> = wanted
        .iter()
        .map(|id| {
            registry()
                .iter()
                .find(|t| t.id == *id)
                .ok_or_else(|| CorpusError::UnknownTheorem(id.to_string()))
        })
        .collect::<Result<_, _>>()?;

    let start = Instant::now();
    let suite: Vec<SuiteEntry> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            specs
                .par_iter()
                .map(|spec| SuiteEntry {
                    theorem: spec.id.to_string(),
                    results: (spec.run)(corpus),
                })
                .collect()
        })
    } else {
        specs
            .iter()
            .map(|spec| SuiteEntry {
                theorem: spec.id.to_string(),
                results: (spec.run)(corpus),
            })
            .collect()
    };
    Ok(SummaryReport::tally(suite, start.elapsed().as_millis()))
}
