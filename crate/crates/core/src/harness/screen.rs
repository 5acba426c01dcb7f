//! Per-graph verdicts on row masks, settling most graphs with cheap bounds.
//!
//! Graphs with a factor only need to know which side of the threshold they
//! fall on. Degree bounds decide most of them, a Cholesky test of `tI − M`
//! decides the rest, and exact polynomial comparison is used inside the tie
//! band. Factor-less graphs always get an exact eigenvalue, since their
//! distance to the threshold is reported.

use std::cmp::Ordering;

use crate::error::Result;
use crate::factors::star_cycle_rows;
use crate::graph::{rows_to_graph, Graph};
use crate::spectra::{all_below, largest_eigenvalue, SymmetricMatrix};
use crate::theorems::{classify, exact_hypothesis, Threshold, ThresholdKind, Verdict, STRICT_MARGIN};

/// Outcome for one theorem on one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Outcome {
    pub verdict: Verdict,
    /// Signed gap into the hypothesis region, for factor-less graphs.
    pub gap: Option<f64>,
    pub escalated: bool,
}

pub(crate) struct Screen<'a> {
    pub thresholds: &'a [Threshold],
}

fn adjacency(rows: &[u16]) -> Vec<f64> {
    let n = rows.len();
    let mut a = vec![0.0; n * n];
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..n {
            if r >> j & 1 == 1 {
                a[i * n + j] = 1.0;
            }
        }
    }
    a
}

fn distances(rows: &[u16]) -> Vec<f64> {
    let n = rows.len();
    let mut d = vec![0.0; n * n];
    for s in 0..n {
        let mut seen: u16 = 1 << s;
        let mut frontier = seen;
        let mut level = 0.0;
        while frontier != 0 {
            level += 1.0;
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= rows[v];
            }
            frontier = next & !seen;
            seen |= frontier;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                d[s * n + v] = level;
            }
        }
    }
    d
}

fn exact_value(data: Vec<f64>, n: usize) -> Result<f64> {
    Ok(largest_eigenvalue(&SymmetricMatrix::new(n, data)?)?.value)
}

/// `Greater` when the largest eigenvalue of `a` is clearly above `t`,
/// `Less` when clearly below, `Equal` inside the tie band.
fn side(a: &[f64], n: usize, t: f64, lower: f64, upper: f64) -> Ordering {
    if upper < t - STRICT_MARGIN {
        Ordering::Less
    } else if lower > t + STRICT_MARGIN {
        Ordering::Greater
    } else if all_below(a, n, t - STRICT_MARGIN) {
        Ordering::Less
    } else if !all_below(a, n, t + STRICT_MARGIN) {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

impl Screen<'_> {
    /// Verdicts in threshold order, one per threshold.
    pub fn evaluate(&self, rows: &[u16], out: &mut Vec<Outcome>) -> Result<()> {
        out.clear();
        let n = rows.len();
        let wide: Vec<u64> = rows.iter().map(|&r| r as u64).collect();
        let factor = star_cycle_rows(&wide);
        let degrees: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        let m = degrees.iter().sum::<u32>() as usize / 2;
        let mut graph: Option<Graph> = None;
        let mut adj: Option<Vec<f64>> = None;
        let mut dist: Option<Vec<f64>> = None;
        for t in self.thresholds {
            let mut get_graph = || graph.get_or_insert_with(|| rows_to_graph(rows)).clone();
            let (value, ord) = match t.kind {
                ThresholdKind::Size => (m as f64, None),
                ThresholdKind::Rho => {
                    let a = adj.get_or_insert_with(|| adjacency(rows));
                    if factor {
                        let max_deg = *degrees.iter().max().unwrap_or(&0) as f64;
                        let lower = (2.0 * m as f64 / n as f64).max(max_deg.sqrt());
                        let upper = max_deg.min(((2 * m + 1) as f64 - n as f64).max(0.0).sqrt());
                        (f64::NAN, Some(side(a, n, t.value, lower, upper)))
                    } else {
                        (exact_value(a.clone(), n)?, None)
                    }
                }
                ThresholdKind::Mu1 => {
                    let d = dist.get_or_insert_with(|| distances(rows));
                    if factor {
                        let sums: Vec<f64> = d.chunks(n).map(|r| r.iter().sum()).collect();
                        let lower = sums.iter().sum::<f64>() / n as f64;
                        let upper = sums.iter().cloned().fold(0.0, f64::max);
                        // AtMost: flip so that Greater means inside the hypothesis
                        (f64::NAN, Some(side(d, n, t.value, lower, upper).reverse()))
                    } else {
                        (exact_value(d.clone(), n)?, None)
                    }
                }
                ThresholdKind::Kappa => unreachable!("matching theorems are not screened"),
            };
            let outcome = match ord {
                Some(Ordering::Equal) => {
                    let met = exact_hypothesis(t, &get_graph())? != Ordering::Less;
                    Outcome {
                        verdict: if met { Verdict::ConclusionHolds } else { Verdict::HypothesisUnmet },
                        gap: None,
                        escalated: true,
                    }
                }
                Some(o) => Outcome {
                    verdict: if o == Ordering::Greater {
                        Verdict::ConclusionHolds
                    } else {
                        Verdict::HypothesisUnmet
                    },
                    gap: None,
                    escalated: false,
                },
                None if factor => {
                    // size thresholds are exact
                    let met = value >= t.value;
                    Outcome {
                        verdict: if met { Verdict::ConclusionHolds } else { Verdict::HypothesisUnmet },
                        gap: None,
                        escalated: false,
                    }
                }
                None => {
                    let gap = t.gap(value);
                    Outcome {
                        verdict: classify(t, &get_graph(), value, false)?,
                        gap: Some(gap),
                        escalated: gap.abs() <= STRICT_MARGIN,
                    }
                }
            };
            out.push(outcome);
        }
        Ok(())
    }
}
