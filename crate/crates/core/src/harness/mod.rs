//! Exhaustive verification over labeled enumerations or graph6 corpora.
//!
//! Labeled runs split the mask space into blocks of 2²⁰ masks. Blocks are
//! processed by up to `chunks` workers and merged strictly in mask order, so
//! records come out in lexicographic graph6 order whatever the worker count.

mod oracle;
mod report;
mod screen;
mod sweep;

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_graph6, for_each_connected_mask, from_graph6, pair_count, rows_to_graph};
use crate::limits::limits;
use crate::theorems::{check_theorem, Threshold, TheoremId, Verdict, VerdictRecord};

pub use oracle::{verify_oracles, OracleSummary};
pub use report::{format_sig, ReportFormat, ReportWriter, RECORD_HEADER, SWEEP_HEADER};
pub use sweep::{sweep, SweepRow};

use screen::{Outcome, Screen};

/// Masks per block.
pub const BLOCK_MASKS: u64 = 1 << 20;
/// Orders at or above this need `allow_large`.
pub const LARGE_ORDER: usize = 8;
const EXAMPLES_KEPT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Every connected labeled graph of each order.
    Labeled(RangeInclusive<usize>),
    /// One graph6 string per line; blank lines and `>>graph6<<` headers skipped.
    Corpus(PathBuf),
}

/// Which records reach the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordMode {
    /// One record per graph and theorem.
    All,
    /// Only exceptional-extremal and VIOLATION records.
    #[default]
    Notable,
    None,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub theorems: Vec<TheoremId>,
    pub chunks: usize,
    pub allow_large: bool,
    pub records: RecordMode,
}

impl RunConfig {
    pub fn labeled(orders: RangeInclusive<usize>, theorems: Vec<TheoremId>) -> RunConfig {
        RunConfig {
            source: Source::Labeled(orders),
            theorems,
            chunks: 1,
            allow_large: false,
            records: RecordMode::Notable,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.theorems.is_empty() {
            return Err(Error::Input("no theorems selected".into()));
        }
        if self.chunks == 0 {
            return Err(Error::Input("chunk count must be positive".into()));
        }
        if let Source::Labeled(r) = &self.source {
            check_orders(r, self.allow_large)?;
        }
        Ok(())
    }
}

pub(crate) fn check_orders(r: &RangeInclusive<usize>, allow_large: bool) -> Result<()> {
    if r.is_empty() || *r.start() < 1 {
        return Err(Error::Input(format!("empty or invalid order range {r:?}")));
    }
    let cap = limits().enumeration_order;
    if *r.end() > cap {
        return Err(Error::Capability { operation: "labeled enumeration", limit: cap, order: *r.end() });
    }
    if *r.end() >= LARGE_ORDER && !allow_large {
        return Err(Error::Input(format!(
            "order {} enumerates over 10^8 labeled graphs; pass --allow-large",
            r.end()
        )));
    }
    Ok(())
}

/// Per-theorem tallies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremSummary {
    pub counts: BTreeMap<Verdict, u64>,
    /// Canonical graph6 of each exceptional-extremal isomorphism class.
    pub extremal_classes: Vec<String>,
    /// Canonical graph6 of each violating isomorphism class.
    pub violation_classes: Vec<String>,
    /// The first few violating labeled graphs.
    pub violation_examples: Vec<String>,
    /// Smallest distance by which a factor-less graph, other than the
    /// extremal graph, stays outside the hypothesis. Negative iff a violation
    /// was found.
    pub worst_margin: Option<f64>,
    /// Graphs settled by exact polynomial comparison.
    pub exact_escalations: u64,
}

impl Default for TheoremSummary {
    fn default() -> Self {
        TheoremSummary {
            counts: Verdict::ALL.iter().map(|&v| (v, 0)).collect(),
            extremal_classes: Vec::new(),
            violation_classes: Vec::new(),
            violation_examples: Vec::new(),
            worst_margin: None,
            exact_escalations: 0,
        }
    }
}

impl TheoremSummary {
    pub fn count(&self, v: Verdict) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    fn merge(&mut self, other: TheoremSummary) {
        for (v, c) in other.counts {
            *self.counts.entry(v).or_default() += c;
        }
        for (mine, theirs) in [
            (&mut self.extremal_classes, other.extremal_classes),
            (&mut self.violation_classes, other.violation_classes),
        ] {
            let set: BTreeSet<String> = mine.drain(..).chain(theirs).collect();
            mine.extend(set);
        }
        let room = EXAMPLES_KEPT.saturating_sub(self.violation_examples.len());
        self.violation_examples.extend(other.violation_examples.into_iter().take(room));
        self.worst_margin = match (self.worst_margin, other.worst_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.exact_escalations += other.exact_escalations;
    }

    fn add(&mut self, graph6: &str, g: impl FnOnce() -> Result<String>, o: &Outcome) -> Result<()> {
        *self.counts.entry(o.verdict).or_default() += 1;
        self.exact_escalations += o.escalated as u64;
        match o.verdict {
            Verdict::ExceptionalExtremal => {
                let c = g()?;
                if !self.extremal_classes.contains(&c) {
                    self.extremal_classes.push(c);
                    self.extremal_classes.sort();
                }
            }
            Verdict::Violation => {
                let c = g()?;
                if !self.violation_classes.contains(&c) {
                    self.violation_classes.push(c);
                    self.violation_classes.sort();
                }
                if self.violation_examples.len() < EXAMPLES_KEPT {
                    self.violation_examples.push(graph6.to_string());
                }
            }
            _ => {}
        }
        if o.verdict != Verdict::ExceptionalExtremal {
            if let Some(gap) = o.gap {
                let margin = -gap;
                self.worst_margin = Some(self.worst_margin.map_or(margin, |w| w.min(margin)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    /// Connected graphs checked.
    pub graphs: u64,
    /// Disconnected corpus entries passed over.
    pub skipped: u64,
    pub theorems: BTreeMap<TheoremId, TheoremSummary>,
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl RunSummary {
    fn new(theorems: &[TheoremId]) -> RunSummary {
        RunSummary {
            graphs: 0,
            skipped: 0,
            theorems: theorems.iter().map(|&t| (t, TheoremSummary::default())).collect(),
            wall_time: Default::default(),
        }
    }

    pub fn violations(&self) -> u64 {
        self.theorems.values().map(|s| s.count(Verdict::Violation)).sum()
    }

    fn merge(&mut self, other: RunSummary) {
        self.graphs += other.graphs;
        self.skipped += other.skipped;
        for (id, s) in other.theorems {
            self.theorems.entry(id).or_default().merge(s);
        }
    }
}

/// Progress after each merged block.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub order: usize,
    pub masks_done: u64,
    pub masks_total: u64,
}

pub type RecordSink<'a> = dyn FnMut(&VerdictRecord) -> Result<()> + 'a;

struct BlockResult {
    summary: RunSummary,
    records: Vec<VerdictRecord>,
}

fn outcome_of(r: &VerdictRecord) -> Outcome {
    let gap = if r.star_cycle_factor == Some(false) || r.k2_factor == Some(false) { r.gap } else { None };
    Outcome { verdict: r.verdict, gap, escalated: false }
}

fn wanted(mode: RecordMode, v: Verdict) -> bool {
    match mode {
        RecordMode::All => true,
        RecordMode::Notable => matches!(v, Verdict::ExceptionalExtremal | Verdict::Violation),
        RecordMode::None => false,
    }
}

/// Checks one graph against every theorem through [`check_theorem`].
fn check_all(g: &crate::graph::Graph, config: &RunConfig, block: &mut BlockResult) -> Result<()> {
    block.summary.graphs += 1;
    for &id in &config.theorems {
        let r = check_theorem(id, g)?;
        let o = outcome_of(&r);
        block.summary.theorems.get_mut(&id).expect("selected").add(&r.graph6, || canonical_graph6(g), &o)?;
        if wanted(config.records, r.verdict) {
            block.records.push(r);
        }
    }
    Ok(())
}

fn run_block(
    nu: usize,
    range: std::ops::Range<u64>,
    config: &RunConfig,
    thresholds: &[Threshold],
) -> Result<BlockResult> {
    let mut block = BlockResult { summary: RunSummary::new(&config.theorems), records: Vec::new() };
    let screen = Screen { thresholds };
    let screened = config.records != RecordMode::All && config.theorems.iter().all(|t| !t.is_matching());
    let mut outcomes = Vec::with_capacity(thresholds.len());
    let mut failure = None;
    for_each_connected_mask(nu, range, |_, rows| {
        if failure.is_some() {
            return;
        }
        let res = (|| -> Result<()> {
            if !screened {
                return check_all(&rows_to_graph(rows), config, &mut block);
            }
            screen.evaluate(rows, &mut outcomes)?;
            block.summary.graphs += 1;
            let notable = outcomes.iter().any(|o| wanted(RecordMode::Notable, o.verdict));
            if !notable {
                for (t, o) in thresholds.iter().zip(&outcomes) {
                    block.summary.theorems.get_mut(&t.theorem).expect("selected").add("", || unreachable!(), o)?;
                }
                return Ok(());
            }
            let g = rows_to_graph(rows);
            let g6 = crate::graph::to_graph6(&g)?;
            for (t, o) in thresholds.iter().zip(&outcomes) {
                block.summary.theorems.get_mut(&t.theorem).expect("selected").add(&g6, || canonical_graph6(&g), o)?;
                if wanted(config.records, o.verdict) {
                    let r = check_theorem(t.theorem, &g)?;
                    if r.verdict != o.verdict {
                        return Err(Error::Numeric(format!(
                            "screened verdict {} disagrees with {} for {} on {g6}",
                            o.verdict, r.verdict, t.theorem
                        )));
                    }
                    block.records.push(r);
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            failure = Some(e);
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(block),
    }
}

fn emit(block: BlockResult, summary: &mut RunSummary, sink: &mut RecordSink<'_>) -> Result<()> {
    for r in &block.records {
        sink(r)?;
    }
    summary.merge(block.summary);
    Ok(())
}

/// Runs a verification; records go to `sink` in deterministic order.
pub fn verify(
    config: &RunConfig,
    sink: &mut RecordSink<'_>,
    mut progress: impl FnMut(Progress),
) -> Result<RunSummary> {
    config.validate()?;
    let start = Instant::now();
    let mut summary = RunSummary::new(&config.theorems);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.chunks)
        .build()
        .map_err(|e| Error::Input(format!("cannot start {} workers: {e}", config.chunks)))?;
    match &config.source {
        Source::Labeled(orders) => {
            for nu in orders.clone() {
                let thresholds: Vec<Threshold> = if nu >= 4 {
                    config
                        .theorems
                        .iter()
                        .filter(|t| !t.is_matching())
                        .map(|&t| Threshold::new(t, nu, None))
                        .collect::<Result<_>>()?
                } else {
                    Vec::new()
                };
                if nu < 4 && config.theorems.iter().any(|t| !t.is_matching()) {
                    return Err(Error::Domain(format!("star-cycle statements need order >= 4, got {nu}")));
                }
                let total = 1u64 << pair_count(nu);
                let blocks: Vec<_> = (0..total)
                    .step_by(BLOCK_MASKS as usize)
                    .map(|s| s..(s + BLOCK_MASKS).min(total))
                    .collect();
                for batch in blocks.chunks(config.chunks) {
                    let results: Vec<Result<BlockResult>> = pool.install(|| {
                        batch.par_iter().map(|r| run_block(nu, r.clone(), config, &thresholds)).collect()
                    });
                    for res in results {
                        emit(res?, &mut summary, sink)?;
                    }
                    let done = batch.last().expect("non-empty").end;
                    progress(Progress { order: nu, masks_done: done, masks_total: total });
                }
            }
        }
        Source::Corpus(path) => {
            let file = std::fs::File::open(path)?;
            let mut lines = Vec::new();
            for line in std::io::BufReader::new(file).lines() {
                let line = line?;
                let s = line.trim().trim_start_matches(">>graph6<<");
                if !s.is_empty() {
                    lines.push(s.to_string());
                }
            }
            lines.sort();
            let mut block = BlockResult { summary: RunSummary::new(&config.theorems), records: Vec::new() };
            for (i, s) in lines.iter().enumerate() {
                let g = from_graph6(s).map_err(|e| Error::Input(format!("corpus entry {}: {e}", i + 1)))?;
                if !g.is_connected() {
                    block.summary.skipped += 1;
                    continue;
                }
                check_all(&g, config, &mut block)?;
            }
            emit(block, &mut summary, sink)?;
        }
    }
    summary.wall_time = start.elapsed();
    Ok(summary)
}
