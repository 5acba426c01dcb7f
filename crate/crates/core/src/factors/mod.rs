//! Perfect matchings and star-cycle factors, each decided two independent
//! ways: a constructive search that returns a certificate, and an exhaustive
//! subset sweep that returns a violating set.
//!
//! The subset criterion for perfect matchings is Tutte's 1-factor theorem:
//! `o(G−X) ≤ |X|` for every `X` (sometimes credited to Amahashi). For star-cycle factors it is
//! `iso(G−X) ≤ 2|X|` for every `X`.

mod matching;
mod star_cycle;
mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use matching::{has_perfect_matching, maximum_matching};
pub use star_cycle::has_star_cycle_factor;
pub use witness::{
    for_each_tutte_violation, iso_witness, iso_witness_bounded, tutte_witness, tutte_witness_bounded,
};

pub(crate) use star_cycle::star_cycle_rows;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// `o(G−X) > |X|`.
    Tutte,
    /// `iso(G−X) > 2|X|`.
    Iso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCounts {
    /// `o(G−X)` or `iso(G−X)`.
    pub observed: usize,
    /// `|X|`.
    pub size: usize,
}

/// A vertex set certifying that a factor does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub subset: Vec<usize>,
    pub counts: WitnessCounts,
}

impl Witness {
    pub fn bound(&self) -> usize {
        match self.kind {
            WitnessKind::Tutte => self.counts.size,
            WitnessKind::Iso => 2 * self.counts.size,
        }
    }

    /// Recomputes the count on `G−X` and checks it matches and violates.
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.order();
        if self.subset.len() != self.counts.size
            || self.subset.iter().any(|&v| v >= n)
            || self.subset.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        let observed = if self.subset.len() == n {
            0
        } else {
            let rest = g.delete_vertices(&self.subset).expect("proper subset");
            match self.kind {
                WitnessKind::Tutte => rest.odd_component_count(),
                WitnessKind::Iso => rest.isolated_count(),
            }
        };
        observed == self.counts.observed && observed > self.bound()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            WitnessKind::Tutte => "o",
            WitnessKind::Iso => "iso",
        };
        write!(
            f,
            "X = {:?}: {what}(G-X) = {} > {}",
            self.subset,
            self.counts.observed,
            self.bound()
        )
    }
}

/// Shape of one factor component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    /// An edge (`K₁,₁`).
    K2,
    /// A path on three vertices (`K₁,₂`); vertices listed end, center, end.
    #[serde(rename = "K1,2")]
    Path3,
    /// A cycle on all listed vertices (at least three), in cyclic order.
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// Every component is `K₂`.
    PerfectMatching,
    /// Components are `K₂`, `K₁,₂` or cycles.
    StarCycle,
}

/// An explicit spanning decomposition proving a factor exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCertificate {
    pub kind: FactorKind,
    pub components: Vec<Component>,
}

/// Factor decision with its certificate when positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorResult {
    pub exists: bool,
    pub certificate: Option<FactorCertificate>,
}

/// Components partition `V(g)` and each contains its claimed subgraph.
pub fn validate_certificate(g: &Graph, cert: &FactorCertificate) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    for c in &cert.components {
        for &v in &c.vertices {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        if cert.kind == FactorKind::PerfectMatching && c.kind != ComponentKind::K2 {
            return false;
        }
        let ok = match c.kind {
            ComponentKind::K2 => c.vertices.len() == 2 && g.has_edge(c.vertices[0], c.vertices[1]),
            ComponentKind::Path3 => {
                c.vertices.len() == 3 && {
                    let v = &c.vertices;
                    // any center will do
                    (0..3).any(|m| (0..3).filter(|&i| i != m).all(|i| g.has_edge(v[m], v[i])))
                }
            }
            ComponentKind::Cycle => c.vertices.len() >= 3 && has_spanning_cycle(g, &c.vertices),
        };
        if !ok {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Hamiltonicity of the induced subgraph, trying the listed order first.
fn has_spanning_cycle(g: &Graph, vs: &[usize]) -> bool {
    let m = vs.len();
    if (0..m).all(|i| g.has_edge(vs[i], vs[(i + 1) % m])) {
        return true;
    }
    if m > 20 {
        return false;
    }
    // reach[mask] = set of end vertices j of paths from vs[0] covering mask
    let full = (1usize << m) - 1;
    let mut reach = vec![0u32; 1 << m];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for j in 0..m {
            if reach[mask] >> j & 1 == 0 {
                continue;
            }
            for k in 0..m {
                if mask >> k & 1 == 0 && g.has_edge(vs[j], vs[k]) {
                    reach[mask | 1 << k] |= 1 << k;
                }
            }
        }
    }
    (1..m).any(|j| reach[full] >> j & 1 == 1 && g.has_edge(vs[j], vs[0]))
}
