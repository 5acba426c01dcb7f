use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// `count` disjoint copies of `K_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub count: usize,
    pub size: usize,
}

/// `K(a; h₁×q₁, h₂×q₂, …) = K_a ∨ (h₁K_{q₁} ∪ h₂K_{q₂} ∪ …)`.
///
/// Parts are kept sorted by descending size with equal sizes merged, so two
/// specs describe isomorphic graphs exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    hub: usize,
    parts: Vec<Part>,
}

impl FamilySpec {
    /// `parts` are `(count, size)` pairs in any order.
    pub fn new(hub: usize, parts: impl IntoIterator<Item = (usize, usize)>) -> Result<FamilySpec> {
        let mut merged: Vec<Part> = Vec::new();
        for (count, size) in parts {
            if count == 0 || size == 0 {
                return Err(Error::Domain(format!(
                    "family part {count}x{size} must have positive multiplicity and size"
                )));
            }
            match merged.iter_mut().find(|p| p.size == size) {
                Some(p) => p.count += count,
                None => merged.push(Part { count, size }),
            }
        }
        merged.sort_by_key(|p| std::cmp::Reverse(p.size));
        let spec = FamilySpec { hub, parts: merged };
        if spec.order() == 0 {
            return Err(Error::Domain("family has no vertices".into()));
        }
        Ok(spec)
    }

    /// Shorthand for single cliques: `K(hub; q₁, q₂, …)`.
    pub fn with_sizes(hub: usize, sizes: &[usize]) -> Result<FamilySpec> {
        FamilySpec::new(hub, sizes.iter().map(|&q| (1, q)))
    }

    pub fn hub(&self) -> usize {
        self.hub
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.hub + self.parts.iter().map(|p| p.count * p.size).sum::<usize>()
    }

    /// Closed-form edge count of the family graph.
    pub fn edge_count(&self) -> usize {
        let n = self.order();
        let a = self.hub;
        a * a.saturating_sub(1) / 2
            + a * (n - a)
            + self
                .parts
                .iter()
                .map(|p| p.count * p.size * (p.size - 1) / 2)
                .sum::<usize>()
    }

    /// Vertex ranges of every clique outside the hub, in layout order.
    pub fn clique_ranges(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = self.hub;
        for p in &self.parts {
            for _ in 0..p.count {
                out.push(start..start + p.size);
                start += p.size;
            }
        }
        out
    }

    /// Hub cell (when non-empty) followed by one cell per distinct part size.
    pub fn natural_partition(&self) -> Vec<Vec<usize>> {
        let mut cells = Vec::new();
        if self.hub > 0 {
            cells.push((0..self.hub).collect());
        }
        let mut start = self.hub;
        for p in &self.parts {
            let len = p.count * p.size;
            cells.push((start..start + len).collect());
            start += len;
        }
        cells
    }

    /// Builds the graph: vertices `0..hub` form `K_hub`, then the cliques in
    /// [`clique_ranges`](Self::clique_ranges) order.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("order checked at construction");
        for u in 0..self.hub {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        for r in self.clique_ranges() {
            for u in r.clone() {
                for v in u + 1..r.end {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }
}

/// `from_family`.
pub fn from_family(spec: &FamilySpec) -> Graph {
    spec.to_graph()
}

impl From<&FamilySpec> for Graph {
    fn from(spec: &FamilySpec) -> Graph {
        spec.to_graph()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({};", self.hub)?;
        for (i, p) in self.parts.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            if p.count == 1 {
                write!(f, "{sep}{}", p.size)?;
            } else {
                write!(f, "{sep}{}x{}", p.count, p.size)?;
            }
        }
        write!(f, ")")
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts `K(2; 5x1)`, `K(1;3,3×1)`, `K(0; 1*4)`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = |why: &str| Error::Input(format!("family spec {s:?}: {why}"));
        let t = s.trim();
        let inner = t
            .strip_prefix('K')
            .and_then(|r| r.trim_start().strip_prefix('('))
            .and_then(|r| r.trim_end().strip_suffix(')'))
            .ok_or_else(|| bad("expected K(a; parts)"))?;
        let (hub, rest) = match inner.split_once(';') {
            Some((h, r)) => (h, r),
            None => (inner, ""),
        };
        let hub: usize = hub.trim().parse().map_err(|_| bad("hub is not an integer"))?;
        let mut parts = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let item = item.replace(['×', '*'], "x");
            let (count, size) = match item.split_once('x') {
                Some((c, q)) => (
                    c.trim().parse().map_err(|_| bad("bad multiplicity"))?,
                    q.trim().parse().map_err(|_| bad("bad part size"))?,
                ),
                None => (1, item.parse().map_err(|_| bad("bad part size"))?),
            };
            parts.push((count, size));
        }
        FamilySpec::new(hub, parts)
    }
}
