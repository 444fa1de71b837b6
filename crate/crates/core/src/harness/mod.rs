//! Theorem and lemma suites over graph corpora, with reproducible JSON
//! reports.
//!
//! A suite checks an implication on every corpus item. A violation is an
//! item meeting the hypothesis but not the conclusion; it is reported with
//! certificates that are re-checked in a separate pass. Searches that run out
//! of budget make the item indeterminate, never clean. Items are evaluated in
//! parallel but reported in corpus order, so a report depends only on the
//! suite, corpus, seed and budget.

mod corpus;
mod suites;
#[cfg(test)]
mod tests;

use crate::clock::Stopwatch;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::containment::{BranchModel, Relation};
use crate::detectors::{verify_hole, verify_three_pc, PrismRule, ThreePcWitness};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::io::parse_graph6;
use crate::search::Status;

pub use corpus::{mixed_sample, SampleKind};

/// Version of the report layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Pattern width of the large induced-minor theorem.
pub const BIG_THEOREM_P: usize = 12;
/// Branch count of the large induced-minor theorem: `2 * C(p, 2) + 2`.
pub const BIG_THEOREM_T: usize = 2 * (BIG_THEOREM_P * (BIG_THEOREM_P - 1) / 2) + 2;

/// Graph corpora are processed in chunks of this many items.
const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuiteId {
    /// The large theorem at full scale; always refused.
    #[serde(rename = "thm-134")]
    Thm134,
    #[serde(rename = "thm-134-lemmas")]
    Thm134Lemmas,
    #[serde(rename = "thm-k34-theta-triangle")]
    ThmK34ThetaTriangle,
    #[serde(rename = "thm-k34-3pc")]
    ThmK34ThreePc,
    #[serde(rename = "lem-55")]
    Lem55,
    #[serde(rename = "lem-subk23im")]
    LemSubK23,
    #[serde(rename = "lem-girthtree")]
    LemGirthTree,
    #[serde(rename = "lem-onepath")]
    LemOnePath,
    #[serde(rename = "lem-allpath")]
    LemAllPath,
    #[serde(rename = "lem-exact1")]
    LemExact1,
    #[serde(rename = "tightness-k33")]
    TightnessK33,
    #[serde(rename = "conjecture-probe")]
    ConjectureProbe,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::Thm134,
        SuiteId::Thm134Lemmas,
        SuiteId::ThmK34ThetaTriangle,
        SuiteId::ThmK34ThreePc,
        SuiteId::Lem55,
        SuiteId::LemSubK23,
        SuiteId::LemGirthTree,
        SuiteId::LemOnePath,
        SuiteId::LemAllPath,
        SuiteId::LemExact1,
        SuiteId::TightnessK33,
        SuiteId::ConjectureProbe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Thm134 => "thm-134",
            SuiteId::Thm134Lemmas => "thm-134-lemmas",
            SuiteId::ThmK34ThetaTriangle => "thm-k34-theta-triangle",
            SuiteId::ThmK34ThreePc => "thm-k34-3pc",
            SuiteId::Lem55 => "lem-55",
            SuiteId::LemSubK23 => "lem-subk23im",
            SuiteId::LemGirthTree => "lem-girthtree",
            SuiteId::LemOnePath => "lem-onepath",
            SuiteId::LemAllPath => "lem-allpath",
            SuiteId::LemExact1 => "lem-exact1",
            SuiteId::TightnessK33 => "tightness-k33",
            SuiteId::ConjectureProbe => "conjecture-probe",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusSpec {
    /// Every connected graph with `min_n..=max_n` vertices, up to isomorphism.
    Exhaustive { min_n: usize, max_n: usize },
    /// `count` graphs from the mixed sampler, orders cycling through the range.
    Sampled {
        min_n: usize,
        max_n: usize,
        count: usize,
    },
    /// Graphs read from a graph6 file, one per line.
    File { path: String },
    /// `count` instances built by the suite.
    Generated { count: usize },
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Exhaustive { min_n, max_n } => {
                write!(f, "exhaustive connected n={min_n}..={max_n}")
            }
            CorpusSpec::Sampled {
                min_n,
                max_n,
                count,
            } => write!(f, "{count} mixed samples n={min_n}..={max_n}"),
            CorpusSpec::File { path } => write!(f, "graph6 file {path}"),
            CorpusSpec::Generated { count } => write!(f, "{count} generated instances"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub suite: SuiteId,
    pub corpus: Vec<CorpusSpec>,
    pub seed: u64,
    /// Node budget of each individual search.
    pub budget: u64,
    /// Tightness target or conjecture name; `None` runs all of them.
    pub variant: Option<String>,
}

impl SuiteSpec {
    /// The suite with its default corpus.
    pub fn new(suite: SuiteId, seed: u64, budget: u64) -> Self {
        let corpus = match suite {
            SuiteId::ThmK34ThetaTriangle | SuiteId::ThmK34ThreePc => vec![
                CorpusSpec::Exhaustive { min_n: 7, max_n: 8 },
                CorpusSpec::Sampled {
                    min_n: 9,
                    max_n: 11,
                    count: 1000,
                },
            ],
            SuiteId::Lem55 => vec![CorpusSpec::Generated { count: 101 }],
            SuiteId::LemSubK23 | SuiteId::LemOnePath | SuiteId::LemAllPath => {
                vec![CorpusSpec::Generated { count: 500 }]
            }
            SuiteId::LemGirthTree | SuiteId::Thm134Lemmas => {
                vec![CorpusSpec::Generated { count: 200 }]
            }
            SuiteId::LemExact1 => vec![CorpusSpec::Generated { count: 100 }],
            SuiteId::TightnessK33 => {
                vec![
                    CorpusSpec::Sampled {
                        min_n: 9,
                        max_n: 14,
                        count: 600,
                    },
                    CorpusSpec::Generated { count: 200 },
                ]
            }
            SuiteId::ConjectureProbe => vec![CorpusSpec::Exhaustive { min_n: 1, max_n: 8 }],
            SuiteId::Thm134 => Vec::new(),
        };
        SuiteSpec {
            suite,
            corpus,
            seed,
            budget,
            variant: None,
        }
    }
}

/// Evidence attached to a reported item, checkable from the graph alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Model {
        pattern: String,
        pattern_graph6: String,
        relation: Relation,
        branch_sets: Vec<VertexSet>,
    },
    ThreePc {
        rule: PrismRule,
        witness: ThreePcWitness,
    },
    Triangle {
        vertices: [Vertex; 3],
    },
    Hole {
        cycle: Vec<Vertex>,
    },
    /// A search that found nothing; not independently checkable.
    Absent {
        what: String,
        status: Status,
    },
    /// A structured lemma report.
    Report {
        name: String,
        value: serde_json::Value,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    /// Position in the suite's corpus sequence.
    pub index: usize,
    pub source: String,
    pub graph6: String,
    pub reason: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub schema: u32,
    pub suite: SuiteId,
    pub variant: Option<String>,
    pub corpus: Vec<String>,
    pub seed: u64,
    pub budget: u64,
    pub processed: usize,
    /// Suite-specific tallies.
    pub counts: BTreeMap<String, usize>,
    pub violations: Vec<Item>,
    pub indeterminates: Vec<Item>,
    /// Examples found by searches; never violations.
    pub finds: Vec<Item>,
    pub notes: Vec<String>,
    pub refused: Option<String>,
    /// Every certificate of every reported item passed the re-check.
    pub reverified: bool,
    pub elapsed_ms: u64,
}

impl HarnessReport {
    fn empty(spec: &SuiteSpec) -> Self {
        HarnessReport {
            schema: REPORT_SCHEMA,
            suite: spec.suite,
            variant: spec.variant.clone(),
            corpus: spec.corpus.iter().map(|c| c.to_string()).collect(),
            seed: spec.seed,
            budget: spec.budget,
            processed: 0,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            indeterminates: Vec::new(),
            finds: Vec::new(),
            notes: Vec::new(),
            refused: None,
            reverified: true,
            elapsed_ms: 0,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with its timing zeroed, for byte comparison.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.to_json()
    }
}

/// Result of one item: tallies plus any reported items.
#[derive(Default)]
pub(crate) struct Eval {
    pub counts: Vec<&'static str>,
    pub verdicts: Vec<Verdict>,
}

pub(crate) enum Verdict {
    Violation(Item),
    Indeterminate(Item),
    Find(Item),
}

impl Eval {
    fn absorb(self, report: &mut HarnessReport) {
        report.processed += 1;
        for key in self.counts {
            *report.counts.entry(key.to_string()).or_default() += 1;
        }
        for v in self.verdicts {
            match v {
                Verdict::Violation(i) => report.violations.push(i),
                Verdict::Indeterminate(i) => report.indeterminates.push(i),
                Verdict::Find(i) => report.finds.push(i),
            }
        }
    }
}

/// Runs a suite. Errors are for invalid specs and unreadable corpora; every
/// per-item difficulty is recorded in the report.
pub fn run_suite(spec: &SuiteSpec) -> Result<HarnessReport> {
    let start = Stopwatch::start();
    let mut report = HarnessReport::empty(spec);
    if spec.budget == 0 {
        return Err(Error::InvalidInput("budget must be positive".into()));
    }
    if spec.suite == SuiteId::Thm134 {
        report.refused = Some(format!(
            "not desk-reproducible: the full statement (t = {BIG_THEOREM_T}, p = {BIG_THEOREM_P}) needs theta searches on \
             hosts with hundreds of vertices and girth above {BIG_THEOREM_P}; run lemma-level suites (thm-134-lemmas)"
        ));
        return Ok(report);
    }
    let ctx = suites::Context::new(spec)?;
    report.notes = ctx.notes();
    let mut offset = 0;
    for (ci, c) in spec.corpus.iter().enumerate() {
        corpus::validate(c)?;
        match c {
            CorpusSpec::Generated { count } => {
                if !ctx.accepts_generated() {
                    return Err(Error::InvalidInput(format!(
                        "suite {} reads graph corpora, not generated ones",
                        spec.suite
                    )));
                }
                let evals: Vec<Eval> = (0..*count)
                    .into_par_iter()
                    .map(|i| ctx.generated(offset + i, ci, i))
                    .collect();
                evals.into_iter().for_each(|e| e.absorb(&mut report));
                offset += count;
            }
            _ => {
                if !ctx.accepts_graphs() {
                    return Err(Error::InvalidInput(format!(
                        "suite {} runs on generated instances only",
                        spec.suite
                    )));
                }
                corpus::for_each_chunk(c, ci, spec.seed, &ctx.seed_pattern(), CHUNK, |chunk| {
                    let base = offset;
                    offset += chunk.len();
                    let evals: Vec<Eval> = chunk
                        .into_par_iter()
                        .enumerate()
                        .map(|(i, s)| ctx.graph(base + i, &s.source, &s.graph))
                        .collect();
                    evals.into_iter().for_each(|e| e.absorb(&mut report));
                    Ok(())
                })?;
            }
        }
    }
    ctx.finish(&mut report);
    let failures: Vec<String> = report
        .violations
        .iter()
        .chain(&report.indeterminates)
        .chain(&report.finds)
        .filter_map(|item| {
            reverify_item(item)
                .err()
                .map(|e| format!("item {}: {e}", item.index))
        })
        .collect();
    if !failures.is_empty() {
        report.reverified = false;
        report.notes.extend(
            failures
                .into_iter()
                .map(|f| format!("certificate re-check failed: {f}")),
        );
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Re-checks every witness-carrying certificate of an item against its
/// graph, using only the definition checkers.
pub fn reverify_item(item: &Item) -> Result<(), String> {
    let g = parse_graph6(&item.graph6).map_err(|e| e.to_string())?;
    for cert in &item.certificates {
        match cert {
            Certificate::Model {
                pattern_graph6,
                relation,
                branch_sets,
                ..
            } => {
                let h = parse_graph6(pattern_graph6).map_err(|e| e.to_string())?;
                let m = BranchModel::new(h, g.clone(), branch_sets.clone());
                let ok = match relation {
                    Relation::Minor => m.verify_minor().is_ok(),
                    Relation::InducedMinor => m.verify().is_ok(),
                    Relation::InducedSubgraph => {
                        branch_sets.iter().all(|s| s.len() == 1) && m.verify().is_ok()
                    }
                };
                if !ok {
                    return Err(format!("{relation} model does not verify"));
                }
            }
            Certificate::ThreePc { rule, witness } => verify_three_pc(&g, witness, *rule)?,
            Certificate::Triangle {
                vertices: [a, b, c],
            } => {
                if !(g.has_edge(*a, *b) && g.has_edge(*b, *c) && g.has_edge(*a, *c)) {
                    return Err("not a triangle".into());
                }
            }
            Certificate::Hole { cycle } => {
                if !verify_hole(&g, cycle) {
                    return Err("not a hole".into());
                }
            }
            Certificate::Absent { .. } | Certificate::Report { .. } => {}
        }
    }
    Ok(())
}
