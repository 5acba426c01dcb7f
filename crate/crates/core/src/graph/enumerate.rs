//! Labeled enumeration of connected graphs.
//!
//! A labeled graph on `n` vertices is identified with its upper-triangle bit
//! sequence `b_0 … b_{M−1}` (graph6 order, `M = n(n−1)/2`), read as an integer
//! with `b_0` as the most significant bit. Increasing masks therefore visit
//! graphs in lexicographic order of their bit sequences, which is also
//! lexicographic graph6 order.

use std::ops::Range;

use super::Graph;
use crate::error::{Error, Result};
use crate::limits::{limits, ENUMERATION_HARD_LIMIT};

pub fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Pair `(i, j)` carried by each mask bit, indexed by bit position.
fn pair_table(order: usize) -> Vec<(u8, u8)> {
    let m = pair_count(order);
    let mut by_seq = Vec::with_capacity(m);
    for j in 1..order {
        for i in 0..j {
            by_seq.push((i as u8, j as u8));
        }
    }
    // bit position p holds sequence index M−1−p
    by_seq.reverse();
    by_seq
}

/// Fills `rows` (length ≥ `order`) with neighbourhood masks.
pub fn mask_to_rows(order: usize, mask: u64, rows: &mut [u16]) {
    let table = pair_table(order);
    fill_rows(&table, order, mask, rows);
}

#[inline]
fn fill_rows(table: &[(u8, u8)], order: usize, mask: u64, rows: &mut [u16]) {
    rows[..order].fill(0);
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (i, j) = table[p];
        rows[i as usize] |= 1 << j;
        rows[j as usize] |= 1 << i;
    }
}

#[inline]
pub(crate) fn rows_connected(rows: &[u16]) -> bool {
    let n = rows.len();
    let full: u32 = (1u32 << n) - 1;
    let mut seen: u32 = 1;
    let mut frontier: u32 = 1;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[v] as u32;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

pub fn rows_to_graph(rows: &[u16]) -> Graph {
    let mut g = Graph::empty(rows.len()).expect("non-empty rows");
    for (u, &r) in rows.iter().enumerate() {
        let mut bits = r & !((2u32 << u) - 1) as u16;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            g.set_edge(u, v);
        }
    }
    g
}

fn check_order(order: usize, cap: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Input("order must be positive".into()));
    }
    let cap = cap.min(ENUMERATION_HARD_LIMIT);
    if order > cap {
        return Err(Error::Capability {
            operation: "labeled enumeration",
            limit: cap,
            order,
        });
    }
    Ok(())
}

/// Calls `sink(mask, rows)` for every connected labeled graph whose mask lies
/// in `range`, in increasing mask order. Returns the number visited.
pub fn for_each_connected_mask(
    order: usize,
    range: Range<u64>,
    mut sink: impl FnMut(u64, &[u16]),
) -> Result<u64> {
    check_order(order, ENUMERATION_HARD_LIMIT)?;
    let table = pair_table(order);
    let end = range.end.min(1u64 << pair_count(order));
    let mut rows = [0u16; 16];
    let mut visited = 0;
    for mask in range.start..end {
        fill_rows(&table, order, mask, &mut rows);
        if rows_connected(&rows[..order]) {
            visited += 1;
            sink(mask, &rows[..order]);
        }
    }
    Ok(visited)
}

/// Visits every labeled connected graph on `order` vertices exactly once, in
/// lexicographic order of the upper-triangle bit sequence.
pub fn enumerate_connected(order: usize, mut sink: impl FnMut(&Graph)) -> Result<u64> {
    check_order(order, limits().enumeration_order)?;
    for_each_connected_mask(order, 0..1u64 << pair_count(order), |_, rows| {
        sink(&rows_to_graph(rows))
    })
}

/// Number of labeled connected graphs on `order` vertices.
pub fn connected_count(order: usize) -> Result<u64> {
    for_each_connected_mask(order, 0..1u64 << pair_count(order), |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::to_graph6;

    fn brute_count(n: usize) -> u64 {
        let m = pair_count(n);
        let mut count = 0;
        for mask in 0u64..1 << m {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if mask >> k & 1 == 1 {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            if Graph::from_edges(n, &edges).unwrap().is_connected() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(connected_count(1).unwrap(), 1);
        assert_eq!(brute_count(3), 4);
        assert_eq!(connected_count(3).unwrap(), 4);
        assert_eq!(brute_count(4), 38);
        assert_eq!(connected_count(4).unwrap(), 38);
        for n in 2..=5 {
            assert_eq!(connected_count(n).unwrap(), brute_count(n), "n = {n}");
        }
    }

    #[test]
    fn order_is_lexicographic_graph6() {
        let mut seen = Vec::new();
        enumerate_connected(4, |g| seen.push(to_graph6(g).unwrap())).unwrap();
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        sorted.dedup();
        assert_eq!(sorted.len(), 38);
    }

    #[test]
    fn rows_round_trip() {
        let g = Graph::cycle(6).unwrap();
        let rows: Vec<u16> = (0..6).map(|v| g.row_mask(v) as u16).collect();
        assert_eq!(rows_to_graph(&rows), g);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_connected(12, |_| {}),
            Err(Error::Capability { .. })
        ));
    }
}
