//! Canonical labeling by individualization and refinement.
//!
//! Partitions are refined to equitable form by neighbour counts, a vertex of
//! the first non-singleton cell is individualized, and the search recurses.
//! Each leaf is a labeling; the canonical form is the lexicographically
//! greatest relabeled upper triangle over all leaves. Leaves that reproduce
//! the best certificate yield automorphisms, which prune sibling branches
//! lying in the same orbit of the pointwise stabilizer of the current path.

use super::Graph;
use crate::error::{Error, Result};
use crate::limits::limits;

type Cells = Vec<Vec<usize>>;

fn refine(rows: &[u64], cells: &mut Cells) {
    'outer: loop {
        for w in 0..cells.len() {
            let splitter: u64 = cells[w].iter().fold(0, |m, &v| m | 1 << v);
            let mut next: Cells = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((rows[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut group = vec![keyed[0].1];
                for pair in keyed.windows(2) {
                    if pair[1].0 != pair[0].0 {
                        next.push(std::mem::take(&mut group));
                        changed = true;
                    }
                    group.push(pair[1].1);
                }
                next.push(group);
            }
            if changed {
                *cells = next;
                continue 'outer;
            }
        }
        return;
    }
}

fn certificate(rows: &[u64], cells: &Cells) -> (Vec<u64>, Vec<usize>) {
    let n = rows.len();
    let mut label = vec![0; n];
    for (pos, cell) in cells.iter().enumerate() {
        label[cell[0]] = pos;
    }
    let mut inverse = vec![0; n];
    for (v, &l) in label.iter().enumerate() {
        inverse[l] = v;
    }
    let m = n * (n - 1) / 2;
    let mut cert = vec![0u64; m.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if rows[inverse[i]] >> inverse[j] & 1 == 1 {
                cert[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    (cert, label)
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Cells, path: &mut Vec<usize>) {
        refine(self.rows, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target].clone() {
            if !tried.is_empty() && self.same_orbit(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            path.push(v);
            self.run(child, path);
            path.pop();
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let (cert, label) = certificate(self.rows, cells);
        match &self.best {
            None => self.best = Some((cert, label)),
            Some((best_cert, best_label)) => {
                if cert == *best_cert {
                    let n = label.len();
                    let mut inverse_best = vec![0; n];
                    for (v, &l) in best_label.iter().enumerate() {
                        inverse_best[l] = v;
                    }
                    let auto: Vec<usize> = (0..n).map(|v| inverse_best[label[v]]).collect();
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.automorphisms.push(auto);
                    }
                } else if cert > *best_cert {
                    self.best = Some((cert, label));
                }
            }
        }
    }

    fn same_orbit(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for auto in &self.automorphisms {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            for (a, &b) in auto.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

fn check_cap(g: &Graph) -> Result<()> {
    let cap = limits().canonical_order.min(64);
    if g.order() > cap {
        return Err(Error::Capability {
            operation: "canonical labeling",
            limit: cap,
            order: g.order(),
        });
    }
    Ok(())
}

/// Canonical labeling as `label[v]` = new name of `v`.
fn canonical_labeling(g: &Graph) -> Result<(Vec<u64>, Vec<usize>)> {
    check_cap(g)?;
    let rows = g.row_masks()?;
    if g.order() == 1 {
        return Ok((vec![0], vec![0]));
    }
    let mut search = Search {
        rows: &rows,
        best: None,
        automorphisms: Vec::new(),
    };
    search.run(vec![(0..g.order()).collect()], &mut Vec::new());
    Ok(search.best.expect("search visits at least one leaf"))
}

/// Byte string that is equal for two graphs exactly when they are isomorphic:
/// the order, then the canonically relabeled upper triangle packed MSB-first.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    let (cert, _) = canonical_labeling(g)?;
    let mut out = vec![g.order() as u8];
    let nbytes = (g.order() * (g.order() - 1) / 2).div_ceil(8);
    out.extend(cert.iter().flat_map(|w| w.to_be_bytes()).take(nbytes));
    Ok(out)
}

/// graph6 of the canonical relabeling; a readable isomorphism-class key.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    let (_, label) = canonical_labeling(g)?;
    super::to_graph6(&g.relabel(&label)?)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}
