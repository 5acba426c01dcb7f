//! Exhaustive subset sweeps for Tutte and isolated-vertex violations.
//!
//! Subsets are visited by size, then lexicographically as sorted vertex
//! lists, so the first hit is the lexicographically first minimal violator.

use super::{Witness, WitnessCounts, WitnessKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::limits;

/// Number of odd components of the subgraph induced by `mask`.
fn odd_count(rows: &[u64], mask: u64) -> usize {
    let mut left = mask;
    let mut odd = 0;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = rows[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        odd += (comp.count_ones() & 1) as usize;
    }
    odd
}

/// Number of vertices of `mask` with no neighbour inside `mask`.
fn iso_count(rows: &[u64], mask: u64) -> usize {
    let mut m = mask;
    let mut iso = 0;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if rows[v] & mask == 0 {
            iso += 1;
        }
    }
    iso
}

fn count(kind: WitnessKind, rows: &[u64], mask: u64) -> usize {
    match kind {
        WitnessKind::Tutte => odd_count(rows, mask),
        WitnessKind::Iso => iso_count(rows, mask),
    }
}

fn violates(kind: WitnessKind, observed: usize, size: usize) -> bool {
    match kind {
        WitnessKind::Tutte => observed > size,
        WitnessKind::Iso => observed > 2 * size,
    }
}

/// Calls `f(subset)` on every `k`-subset of `0..n` in lexicographic order;
/// stops when `f` returns `true`.
fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn checked_rows(g: &Graph, cap: usize, operation: &'static str) -> Result<Vec<u64>> {
    if g.order() > cap {
        return Err(Error::Capability { operation, limit: cap, order: g.order() });
    }
    g.row_masks()
}

fn search(g: &Graph, kind: WitnessKind, max_size: usize) -> Result<Option<Witness>> {
    let operation = match kind {
        WitnessKind::Tutte => "tutte witness search",
        WitnessKind::Iso => "iso witness search",
    };
    let n = g.order();
    // sweeps bounded well below n stay polynomial; only the word size limits them
    let cap = if max_size < n / 2 { 64 } else { limits().witness_order };
    let rows = checked_rows(g, cap, operation)?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut found = None;
    for k in 0..=max_size.min(n) {
        let hit = combinations(n, k, |x| {
            let removed = x.iter().fold(0u64, |m, &v| m | 1 << v);
            let observed = count(kind, &rows, all & !removed);
            if violates(kind, observed, k) {
                found = Some(Witness {
                    kind,
                    subset: x.to_vec(),
                    counts: WitnessCounts { observed, size: k },
                });
                true
            } else {
                false
            }
        });
        if hit {
            break;
        }
    }
    Ok(found)
}

/// Lexicographically first minimum-size `X` with `o(G−X) > |X|`.
pub fn tutte_witness(g: &Graph) -> Result<Option<Witness>> {
    search(g, WitnessKind::Tutte, g.order())
}

/// As [`tutte_witness`], restricted to `|X| ≤ max_size`.
pub fn tutte_witness_bounded(g: &Graph, max_size: usize) -> Result<Option<Witness>> {
    search(g, WitnessKind::Tutte, max_size)
}

/// Lexicographically first minimum-size `X` with `iso(G−X) > 2|X|`.
pub fn iso_witness(g: &Graph) -> Result<Option<Witness>> {
    search(g, WitnessKind::Iso, g.order())
}

/// As [`iso_witness`], restricted to `|X| ≤ max_size`.
pub fn iso_witness_bounded(g: &Graph, max_size: usize) -> Result<Option<Witness>> {
    search(g, WitnessKind::Iso, max_size)
}

/// Every `X` with `o(G−X) > |X|`, in search order.
pub fn for_each_tutte_violation(g: &Graph, mut f: impl FnMut(&Witness)) -> Result<()> {
    let rows = checked_rows(g, limits().witness_order, "tutte violation sweep")?;
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 0..=n {
        combinations(n, k, |x| {
            let removed = x.iter().fold(0u64, |m, &v| m | 1 << v);
            let observed = odd_count(&rows, all & !removed);
            if observed > k {
                f(&Witness {
                    kind: WitnessKind::Tutte,
                    subset: x.to_vec(),
                    counts: WitnessCounts { observed, size: k },
                });
            }
            false
        });
    }
    Ok(())
}
