//! Cross-checks of the constructive factor searches against the subset
//! criteria over every connected labeled graph.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_orders, BLOCK_MASKS};
use crate::error::{Error, Result};
use crate::factors::{
    for_each_tutte_violation, has_perfect_matching, has_star_cycle_factor, iso_witness, tutte_witness,
    validate_certificate,
};
use crate::graph::{for_each_connected_mask, pair_count, rows_to_graph, to_graph6, Graph};

const EXAMPLES_KEPT: usize = 20;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub graphs: u64,
    /// Even-order graphs without a perfect matching.
    pub non_matchable: u64,
    /// Graphs without a star-cycle factor.
    pub no_star_cycle: u64,
    /// Violating sets checked for the parity property.
    pub parity_sets_checked: u64,
    /// Matcher and Tutte sweep disagree.
    pub matching_discrepancies: u64,
    /// Backtracker and isolated-vertex sweep disagree.
    pub star_cycle_discrepancies: u64,
    /// A violating set with `o(G−X) < |X| + 2` or the wrong parity.
    pub parity_failures: u64,
    /// Perfect matching found but no star-cycle factor.
    pub implication_failures: u64,
    /// Certificates or witnesses that fail re-validation.
    pub certificate_failures: u64,
    /// graph6 of the first failing graphs.
    pub examples: Vec<String>,
}

impl OracleSummary {
    pub fn failures(&self) -> u64 {
        self.matching_discrepancies
            + self.star_cycle_discrepancies
            + self.parity_failures
            + self.implication_failures
            + self.certificate_failures
    }

    fn merge(&mut self, o: OracleSummary) {
        self.graphs += o.graphs;
        self.non_matchable += o.non_matchable;
        self.no_star_cycle += o.no_star_cycle;
        self.parity_sets_checked += o.parity_sets_checked;
        self.matching_discrepancies += o.matching_discrepancies;
        self.star_cycle_discrepancies += o.star_cycle_discrepancies;
        self.parity_failures += o.parity_failures;
        self.implication_failures += o.implication_failures;
        self.certificate_failures += o.certificate_failures;
        let room = EXAMPLES_KEPT.saturating_sub(self.examples.len());
        self.examples.extend(o.examples.into_iter().take(room));
    }

    fn check(&mut self, g: &Graph) -> Result<()> {
        let before = self.failures();
        self.graphs += 1;
        let sc = has_star_cycle_factor(g)?;
        let iw = iso_witness(g)?;
        self.star_cycle_discrepancies += (sc.exists != iw.is_none()) as u64;
        self.no_star_cycle += !sc.exists as u64;
        let sc_ok = match (&sc.certificate, &iw) {
            (Some(c), _) => validate_certificate(g, c),
            (None, Some(w)) => w.validate(g),
            (None, None) => true,
        };
        self.certificate_failures += !sc_ok as u64;
        if g.order() % 2 == 0 {
            let pm = has_perfect_matching(g);
            let tw = tutte_witness(g)?;
            self.matching_discrepancies += (pm.exists != tw.is_none()) as u64;
            self.implication_failures += (pm.exists && !sc.exists) as u64;
            let pm_ok = match (&pm.certificate, &tw) {
                (Some(c), _) => validate_certificate(g, c),
                (None, Some(w)) => w.validate(g),
                (None, None) => true,
            };
            self.certificate_failures += !pm_ok as u64;
            if !pm.exists {
                self.non_matchable += 1;
                let (mut checked, mut bad) = (0, 0);
                for_each_tutte_violation(g, |w| {
                    checked += 1;
                    let (o, x) = (w.counts.observed, w.counts.size);
                    bad += (o < x + 2 || (o - x) % 2 != 0) as u64;
                })?;
                self.parity_sets_checked += checked;
                self.parity_failures += bad;
            }
        }
        if self.failures() > before && self.examples.len() < EXAMPLES_KEPT {
            self.examples.push(to_graph6(g)?);
        }
        Ok(())
    }
}

fn run_block(nu: usize, range: std::ops::Range<u64>) -> Result<OracleSummary> {
    let mut s = OracleSummary::default();
    let mut failure = None;
    for_each_connected_mask(nu, range, |_, rows| {
        if failure.is_none() {
            if let Err(e) = s.check(&rows_to_graph(rows)) {
                failure = Some(e);
            }
        }
    })?;
    failure.map_or(Ok(s), Err)
}

/// Both factor oracle pairs, the parity property of every violating set,
/// and certificate re-validation, over every connected graph in `orders`.
pub fn verify_oracles(
    orders: RangeInclusive<usize>,
    chunks: usize,
    allow_large: bool,
) -> Result<OracleSummary> {
    check_orders(&orders, allow_large)?;
    if chunks == 0 {
        return Err(Error::Input("chunk count must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(chunks)
        .build()
        .map_err(|e| Error::Input(format!("cannot start {chunks} workers: {e}")))?;
    let mut total = OracleSummary::default();
    for nu in orders {
        let end = 1u64 << pair_count(nu);
        let blocks: Vec<_> =
            (0..end).step_by(BLOCK_MASKS as usize).map(|s| s..(s + BLOCK_MASKS).min(end)).collect();
        for batch in blocks.chunks(chunks) {
            let results: Vec<Result<OracleSummary>> =
                pool.install(|| batch.par_iter().map(|r| run_block(nu, r.clone())).collect());
            for r in results {
                total.merge(r?);
            }
        }
    }
    Ok(total)
}
