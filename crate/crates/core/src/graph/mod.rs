//! Simple undirected graphs on vertices `0..order`.
//!
//! A [`Graph`] is immutable once built. Adjacency is stored as one bitset row
//! per vertex; the canonical external form is the packed upper-triangle bit
//! sequence used by graph6 (see [`Graph::upper_triangle_bits`]).

mod canon;
mod edgelist;
mod enumerate;
mod family;
mod graph6;

pub use canon::{canonical_form, canonical_graph6, is_isomorphic};
pub use edgelist::{parse_edge_list, to_edge_list};
pub use enumerate::{
    connected_count, enumerate_connected, for_each_connected_mask, mask_to_rows, pair_count,
    rows_to_graph,
};
pub use family::{from_family, FamilySpec, Part};
pub use graph6::{from_graph6, to_graph6};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Graph> {
        if order == 0 {
            return Err(Error::Input("a graph needs at least one vertex".into()));
        }
        let words = order.div_ceil(64);
        Ok(Graph {
            order,
            words,
            rows: vec![0; order * words],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                g.set_edge(i, j);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Input(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / 64] &= !(1 << (v % 64));
        self.rows[v * w + u / 64] &= !(1 << (u % 64));
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    /// δ(G).
    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.order {
            out.extend(self.neighbors(i).filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// Neighbourhood of `v` as a single word. Only meaningful for order ≤ 64.
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.order <= 64);
        self.rows[v * self.words]
    }

    /// Neighbourhood masks of every vertex, for order ≤ 64.
    pub fn row_masks(&self) -> Result<Vec<u64>> {
        if self.order > 64 {
            return Err(Error::Capability {
                operation: "bitmask adjacency",
                limit: 64,
                order: self.order,
            });
        }
        Ok((0..self.order).map(|v| self.row_mask(v)).collect())
    }

    /// The upper triangle in graph6 order: pairs `(i, j)`, `i < j`, column by
    /// column (`j = 1..order`, then `i = 0..j`).
    pub fn upper_triangle_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.order * (self.order - 1) / 2);
        for j in 1..self.order {
            for i in 0..j {
                bits.push(self.has_edge(i, j));
            }
        }
        bits
    }

    /// Copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.order || v >= self.order {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                order: self.order,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Copy of `self` with the edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < self.order && v < self.order {
            g.clear_edge(u, v);
        }
        g
    }

    /// `G ∨ H`: the vertices of `h` follow those of `g`.
    pub fn join(&self, h: &Graph) -> Graph {
        let n = self.order + h.order;
        let mut out = self.disjoint_with(h, n);
        for u in 0..self.order {
            for v in self.order..n {
                out.set_edge(u, v);
            }
        }
        out
    }

    fn disjoint_with(&self, h: &Graph, n: usize) -> Graph {
        let mut out = Graph::empty(n).expect("order is positive");
        for (u, v) in self.edges() {
            out.set_edge(u, v);
        }
        for (u, v) in h.edges() {
            out.set_edge(self.order + u, self.order + v);
        }
        out
    }

    /// Disjoint union, vertices numbered block by block.
    pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
        let n: usize = gs.iter().map(Graph::order).sum();
        let mut out = Graph::empty(n)?;
        let mut offset = 0;
        for g in gs {
            for (u, v) in g.edges() {
                out.set_edge(offset + u, offset + v);
            }
            offset += g.order;
        }
        Ok(out)
    }

    /// `G − X`, with the surviving vertices renumbered in increasing order.
    pub fn delete_vertices(&self, x: &[usize]) -> Result<Graph> {
        let mut removed = vec![false; self.order];
        for &v in x {
            if v >= self.order {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: self.order,
                });
            }
            removed[v] = true;
        }
        let keep: Vec<usize> = (0..self.order).filter(|&v| !removed[v]).collect();
        if keep.is_empty() {
            return Err(Error::EmptyGraph);
        }
        self.induced_subgraph(&keep)
    }

    /// `G[S]` with vertices renumbered in the order given by `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut out = Graph::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    out.set_edge(a, b);
                }
            }
        }
        Ok(out)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.order];
        if perm.len() != self.order {
            return Err(Error::Input("permutation length differs from order".into()));
        }
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Input("not a permutation".into()));
            }
        }
        let mut out = Graph::empty(self.order)?;
        for (u, v) in self.edges() {
            out.set_edge(perm[u], perm[v]);
        }
        Ok(out)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.order];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.order {
            if label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[s] = id;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = id;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// o(G): components of odd order.
    pub fn odd_component_count(&self) -> usize {
        self.components().iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// iso(G): vertices of degree zero.
    pub fn isolated_count(&self) -> usize {
        (0..self.order).filter(|&v| self.degree(v) == 0).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_graph_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.size(), 4);
        assert_eq!(c4, Graph::cycle(4).unwrap());

        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));

        let k2 = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(k2.size(), 1);
    }

    #[test]
    fn build_graph_errors() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(Graph::empty(0).is_err());
    }

    #[test]
    fn join_and_union() {
        let star = Graph::complete(1)
            .unwrap()
            .join(&Graph::empty(3).unwrap());
        assert_eq!(star, Graph::star(3).unwrap());

        let k2 = Graph::complete(2).unwrap();
        let two_k2 = Graph::disjoint_union(&[k2.clone(), k2]).unwrap();
        assert_eq!((two_k2.order(), two_k2.size()), (4, 2));
        assert_eq!(two_k2.components().len(), 2);
    }

    #[test]
    fn join_min_degree() {
        let g = Graph::path(4).unwrap();
        let h = Graph::cycle(5).unwrap();
        let j = g.join(&h);
        assert_eq!(
            j.min_degree(),
            (g.min_degree() + h.order()).min(h.min_degree() + g.order())
        );
    }

    #[test]
    fn delete_vertices_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.delete_vertices(&[]).unwrap(), c4);
        assert_eq!(c4.delete_vertices(&[2]).unwrap(), Graph::from_edges(3, &[(0, 1), (2, 0)]).unwrap());
        assert!(matches!(c4.delete_vertices(&[0, 1, 2, 3]), Err(Error::EmptyGraph)));
    }

    #[test]
    fn component_counts() {
        let g = Graph::empty(5).unwrap();
        assert_eq!(g.odd_component_count(), 5);
        assert_eq!(g.isolated_count(), 5);
        assert!(!g.is_connected());
        let p = Graph::path(4).unwrap();
        assert_eq!(p.odd_component_count(), 0);
        assert!(p.is_connected());
    }

    #[test]
    fn neighbors_cross_word_boundary() {
        let g = Graph::from_edges(130, &[(0, 64), (0, 129), (63, 64)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![64, 129]);
        assert_eq!(g.degree(64), 2);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.size(), 3);
    }
}
