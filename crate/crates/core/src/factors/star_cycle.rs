//! Star-cycle factor search.
//!
//! The lowest uncovered vertex is covered by an edge, then by a 3-path with
//! it as center, then by a 3-path with it as an end. Failed remainders are
//! memoized. Cycle components are never tried: a cycle splits into edges and
//! at most one 3-path, so any state the first two branches cannot cover is
//! uncoverable.

use std::collections::HashSet;

use super::{Component, ComponentKind, FactorCertificate, FactorKind, FactorResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::limits;

const DENSE_MEMO_MAX: usize = 24;

enum Memo {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl Memo {
    fn new(n: usize) -> Memo {
        if n <= DENSE_MEMO_MAX {
            Memo::Dense(vec![0; ((1usize << n) / 64).max(1)])
        } else {
            Memo::Sparse(HashSet::new())
        }
    }

    fn failed(&self, mask: u64) -> bool {
        match self {
            Memo::Dense(bits) => bits[(mask >> 6) as usize] >> (mask & 63) & 1 == 1,
            Memo::Sparse(set) => set.contains(&mask),
        }
    }

    fn mark(&mut self, mask: u64) {
        match self {
            Memo::Dense(bits) => bits[(mask >> 6) as usize] |= 1 << (mask & 63),
            Memo::Sparse(set) => {
                set.insert(mask);
            }
        }
    }
}

struct Search<'a> {
    rows: &'a [u64],
    memo: Memo,
    stack: Vec<[usize; 3]>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

impl Search<'_> {
    fn cover(&mut self, left: u64) -> bool {
        if left == 0 {
            return true;
        }
        if self.memo.failed(left) {
            return false;
        }
        let v = left.trailing_zeros() as usize;
        let rest = left & !(1 << v);
        let nbrs = self.rows[v] & rest;
        if nbrs != 0 {
            for u in bits(nbrs) {
                self.stack.push([v, u, usize::MAX]);
                if self.cover(rest & !(1 << u)) {
                    return true;
                }
                self.stack.pop();
            }
            for u in bits(nbrs) {
                for w in bits(nbrs & !((2u64 << u) - 1)) {
                    self.stack.push([u, v, w]);
                    if self.cover(rest & !(1 << u) & !(1 << w)) {
                        return true;
                    }
                    self.stack.pop();
                }
            }
            for c in bits(nbrs) {
                for w in bits(self.rows[c] & rest & !(1 << c)) {
                    self.stack.push([v, c, w]);
                    if self.cover(rest & !(1 << c) & !(1 << w)) {
                        return true;
                    }
                    self.stack.pop();
                }
            }
        }
        self.memo.mark(left);
        false
    }
}

/// Row-mask entry point, no capability checks.
pub(crate) fn star_cycle_rows(rows: &[u64]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    let mut s = Search { rows, memo: Memo::new(n), stack: Vec::new() };
    s.cover(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
}

/// Star-cycle factor with a certificate of edges and 3-paths.
pub fn has_star_cycle_factor(g: &Graph) -> Result<FactorResult> {
    let cap = limits().star_cycle_order;
    if g.order() > cap {
        return Err(Error::Capability {
            operation: "star-cycle factor search",
            limit: cap,
            order: g.order(),
        });
    }
    let rows = g.row_masks()?;
    let n = rows.len();
    let mut s = Search { rows: &rows, memo: Memo::new(n), stack: Vec::new() };
    if !s.cover((1u64 << n) - 1) {
        return Ok(FactorResult { exists: false, certificate: None });
    }
    let components = s
        .stack
        .into_iter()
        .map(|[a, b, c]| {
            if c == usize::MAX {
                Component { kind: ComponentKind::K2, vertices: vec![a, b] }
            } else {
                Component { kind: ComponentKind::Path3, vertices: vec![a, b, c] }
            }
        })
        .collect();
    Ok(FactorResult {
        exists: true,
        certificate: Some(FactorCertificate { kind: FactorKind::StarCycle, components }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{iso_witness, validate_certificate};
    use crate::graph::{enumerate_connected, FamilySpec};

    #[test]
    fn small_examples() {
        assert!(has_star_cycle_factor(&Graph::cycle(5).unwrap()).unwrap().exists);
        assert!(has_star_cycle_factor(&Graph::path(3).unwrap()).unwrap().exists);
        assert!(has_star_cycle_factor(&Graph::star(2).unwrap()).unwrap().exists);
        assert!(!has_star_cycle_factor(&Graph::star(3).unwrap()).unwrap().exists);
        assert!(!has_star_cycle_factor(&Graph::empty(1).unwrap()).unwrap().exists);
    }

    #[test]
    fn extremal_graphs_fail() {
        let g = FamilySpec::new(2, [(5, 1)]).unwrap().to_graph();
        assert!(!has_star_cycle_factor(&g).unwrap().exists);
        for nu in 8..=14 {
            let g = FamilySpec::new(1, [(1, nu - 4), (3, 1)]).unwrap().to_graph();
            assert!(!has_star_cycle_factor(&g).unwrap().exists, "nu = {nu}");
        }
    }

    #[test]
    fn certificates_validate() {
        let g = Graph::complete(7).unwrap();
        let r = has_star_cycle_factor(&g).unwrap();
        assert!(validate_certificate(&g, r.certificate.as_ref().unwrap()));
    }

    #[test]
    fn agrees_with_iso_criterion_up_to_seven() {
        for n in 2..=7 {
            enumerate_connected(n, |g| {
                let r = has_star_cycle_factor(g).unwrap();
                let w = iso_witness(g).unwrap();
                assert_eq!(r.exists, w.is_none(), "{}", crate::graph::to_graph6(g).unwrap());
                if let Some(c) = &r.certificate {
                    assert!(validate_certificate(g, c));
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn sparse_memo_path() {
        // 26 vertices: a path has a factor, a path plus pendant-heavy star part does not
        let g = Graph::path(26).unwrap();
        assert!(star_cycle_rows(&g.row_masks().unwrap()));
        let g = Graph::star(25).unwrap();
        assert!(!star_cycle_rows(&g.row_masks().unwrap()));
    }
}
