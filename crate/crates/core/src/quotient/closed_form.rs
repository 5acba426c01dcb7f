//! The fifteen closed-form quotient matrices of the extremal `K(a; …)`
//! families, each paired with the family instance and cell order it
//! describes.
//!
//! Parameters: `nu` is the order, `x` the hub size `|X|` of the family
//! (or deleted set), `delta` the minimum degree. Each id reads only the
//! parameters listed in its doc line.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PartitionSpec, QuotientMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::MatrixKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixId {
    /// Q of `K(x; ν−2x−1, (x+1)×1)`; cells hub, big, singles. Reads ν, x.
    M1,
    /// Q of `K(δ; ν−2δ−1, (δ+1)×1)`; cells hub, big, singles. Reads ν, δ.
    M2,
    /// D of `K(x; b, (x+1)×t)` with `t = δ−x+1`, `b = ν−(x+1)t−x`; cells hub,
    /// big, small cliques. Reads ν, x, δ.
    M3,
    /// D of `K(δ; ν−2δ−1, (δ+1)×1)`; cells hub, big, singles. Reads ν, δ.
    M4,
    /// D of `K(x; ν−2x−1, (x+1)×1)`; cells big, hub, singles. Reads ν, x.
    M5,
    /// D of `K(δ; ν−2δ−1, (δ+1)×1)`; cells big, hub, singles. Reads ν, δ.
    M6,
    /// A of `K(x; ν−3x−1, (2x+1)×1)`; cells hub, singles, big. Reads ν, x.
    M7,
    /// A of `K(x; (2x+1)×1)`; cells hub, singles. Reads x.
    M8,
    /// A of `K(x; (2x+2)×1)`; cells hub, singles. Reads x.
    M9,
    /// D of `K(x; ν−3x−1, (2x+1)×1)`; cells hub, singles, big. Reads ν, x.
    M10,
    /// D of `K(1; ν−4, 3×1)`; cells hub, singles, big. Reads ν.
    M11,
    /// D of `K(x; (2x+1)×1)`; cells hub, singles. Reads x.
    M12,
    /// D of `K(x; (2x+2)×1)`; cells hub, singles. Reads x.
    M13,
    /// A of `K(2; 5×1)`; cells hub, singles. No parameters.
    M14,
    /// A of `K(1; ν−4, 3×1)`; cells hub, singles, big. Reads ν.
    M15,
}

impl MatrixId {
    pub const ALL: [MatrixId; 15] = [
        MatrixId::M1,
        MatrixId::M2,
        MatrixId::M3,
        MatrixId::M4,
        MatrixId::M5,
        MatrixId::M6,
        MatrixId::M7,
        MatrixId::M8,
        MatrixId::M9,
        MatrixId::M10,
        MatrixId::M11,
        MatrixId::M12,
        MatrixId::M13,
        MatrixId::M14,
        MatrixId::M15,
    ];

    pub fn kind(self) -> MatrixKind {
        use MatrixId::*;
        match self {
            M1 | M2 => MatrixKind::SignlessLaplacian,
            M7 | M8 | M9 | M14 | M15 => MatrixKind::Adjacency,
            M3 | M4 | M5 | M6 | M10 | M11 | M12 | M13 => MatrixKind::Distance,
        }
    }

    pub fn number(self) -> usize {
        MatrixId::ALL.iter().position(|&m| m == self).unwrap() + 1
    }
}

impl fmt::Display for MatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.number())
    }
}

impl FromStr for MatrixId {
    type Err = Error;

    fn from_str(s: &str) -> Result<MatrixId> {
        let t = s.trim();
        let digits = t.strip_prefix(['M', 'm']).unwrap_or(t);
        digits
            .parse::<usize>()
            .ok()
            .and_then(|k| k.checked_sub(1))
            .and_then(|k| MatrixId::ALL.get(k).copied())
            .ok_or_else(|| Error::Input(format!("unknown matrix id {s:?} (expected M1..M15)")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
}

impl MatrixParams {
    pub fn new(nu: Option<usize>, x: Option<usize>, delta: Option<usize>) -> MatrixParams {
        MatrixParams { nu, x, delta }
    }

    fn get(&self, id: MatrixId, name: &str) -> Result<i64> {
        let v = match name {
            "nu" => self.nu,
            "x" => self.x,
            _ => self.delta,
        };
        v.map(|v| v as i64)
            .ok_or_else(|| Error::Domain(format!("{id} needs parameter {name}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Hub,
    Big,
    Small,
}

/// `K(hub; big, count×size)` laid out as hub vertices, then the big clique,
/// then the small cliques; `cells` fixes the displayed cell order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLayout {
    pub hub: usize,
    pub big: Option<usize>,
    pub count: usize,
    pub size: usize,
    pub cells: Vec<Role>,
}

impl FamilyLayout {
    pub fn order(&self) -> usize {
        self.hub + self.big.unwrap_or(0) + self.count * self.size
    }

    pub fn graph(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        for u in 0..self.hub {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        let mut start = self.hub;
        let mut cliques = Vec::new();
        if let Some(b) = self.big {
            cliques.push(start..start + b);
            start += b;
        }
        for _ in 0..self.count {
            cliques.push(start..start + self.size);
            start += self.size;
        }
        for r in cliques {
            for u in r.clone() {
                for v in u + 1..r.end {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("layout vertices are in range")
    }

    pub fn partition(&self) -> PartitionSpec {
        let big = self.big.unwrap_or(0);
        let cells = self
            .cells
            .iter()
            .map(|role| match role {
                Role::Hub => (0..self.hub).collect(),
                Role::Big => (self.hub..self.hub + big).collect(),
                Role::Small => (self.hub + big..self.order()).collect(),
            })
            .collect();
        PartitionSpec::new(self.order(), cells).expect("layout cells partition the vertices")
    }
}

fn positive(id: MatrixId, what: &str, v: i64) -> Result<usize> {
    if v < 1 {
        return Err(Error::Domain(format!("{id}: {what} = {v} must be at least 1")));
    }
    Ok(v as usize)
}

impl MatrixId {
    /// The family instance and cell order this matrix is the quotient of.
    pub fn layout(self, p: &MatrixParams) -> Result<FamilyLayout> {
        use MatrixId::*;
        use Role::*;
        let id = self;
        let l = |hub: i64, big: Option<i64>, count: i64, size: i64, cells: Vec<Role>| -> Result<FamilyLayout> {
            Ok(FamilyLayout {
                hub: positive(id, "hub size", hub)?,
                big: big.map(|b| positive(id, "big clique order", b)).transpose()?,
                count: positive(id, "part multiplicity", count)?,
                size: positive(id, "part size", size)?,
                cells,
            })
        };
        match self {
            M1 | M5 | M2 | M4 | M6 => {
                let nu = p.get(id, "nu")?;
                let s = if matches!(self, M1 | M5) { p.get(id, "x")? } else { p.get(id, "delta")? };
                let cells = if matches!(self, M5 | M6) { vec![Big, Hub, Small] } else { vec![Hub, Big, Small] };
                l(s, Some(nu - 2 * s - 1), s + 1, 1, cells)
            }
            M3 => {
                let (nu, x, d) = (p.get(id, "nu")?, p.get(id, "x")?, p.get(id, "delta")?);
                let t = d - x + 1;
                l(x, Some(nu - (x + 1) * t - x), x + 1, t, vec![Hub, Big, Small])
            }
            M7 | M10 => {
                let (nu, x) = (p.get(id, "nu")?, p.get(id, "x")?);
                l(x, Some(nu - 3 * x - 1), 2 * x + 1, 1, vec![Hub, Small, Big])
            }
            M8 | M12 => {
                let x = p.get(id, "x")?;
                l(x, None, 2 * x + 1, 1, vec![Hub, Small])
            }
            M9 | M13 => {
                let x = p.get(id, "x")?;
                l(x, None, 2 * x + 2, 1, vec![Hub, Small])
            }
            M11 | M15 => {
                let nu = p.get(id, "nu")?;
                l(1, Some(nu - 4), 3, 1, vec![Hub, Small, Big])
            }
            M14 => l(2, None, 5, 1, vec![Hub, Small]),
        }
    }
}

/// Evaluates the closed form of `id` at `params`.
pub fn closed_form_matrix(id: MatrixId, params: &MatrixParams) -> Result<QuotientMatrix> {
    use MatrixId::*;
    // validates every part size
    id.layout(params)?;
    let p = |name: &str| params.get(id, name);
    let rows: Vec<Vec<i64>> = match id {
        M1 | M2 => {
            let nu = p("nu")?;
            let s = if id == M1 { p("x")? } else { p("delta")? };
            vec![
                vec![nu + s - 2, nu - 2 * s - 1, s + 1],
                vec![s, 2 * nu - 3 * s - 4, 0],
                vec![s, 0, s],
            ]
        }
        M3 => {
            let (nu, x, d) = (p("nu")?, p("x")?, p("delta")?);
            let t = d - x + 1;
            let b = nu - (x + 1) * t - x;
            vec![
                vec![x - 1, b, (x + 1) * t],
                vec![x, b - 1, 2 * (x + 1) * t],
                vec![x, 2 * b, d + 2 * x * t - x],
            ]
        }
        M4 => {
            let (nu, d) = (p("nu")?, p("delta")?);
            vec![
                vec![d - 1, nu - 2 * d - 1, d + 1],
                vec![d, nu - 2 * d - 2, 2 * (d + 1)],
                vec![d, 2 * (nu - 2 * d - 1), 2 * d],
            ]
        }
        M5 | M6 => {
            let nu = p("nu")?;
            let s = if id == M5 { p("x")? } else { p("delta")? };
            vec![
                vec![nu - 2 * s - 2, s, 2 * (s + 1)],
                vec![nu - 2 * s - 1, s - 1, s + 1],
                vec![2 * (nu - 2 * s - 1), s, 2 * s],
            ]
        }
        M7 => {
            let (nu, x) = (p("nu")?, p("x")?);
            vec![
                vec![x - 1, 2 * x + 1, nu - 3 * x - 1],
                vec![x, 0, 0],
                vec![x, 0, nu - 3 * x - 2],
            ]
        }
        M8 => {
            let x = p("x")?;
            vec![vec![x - 1, 2 * x + 1], vec![x, 0]]
        }
        M9 => {
            let x = p("x")?;
            vec![vec![x - 1, 2 * x + 2], vec![x, 0]]
        }
        M10 => {
            let (nu, x) = (p("nu")?, p("x")?);
            vec![
                vec![x - 1, 2 * x + 1, nu - 3 * x - 1],
                vec![x, 4 * x, 2 * (nu - 3 * x - 1)],
                vec![x, 2 * (2 * x + 1), nu - 3 * x - 2],
            ]
        }
        M11 => {
            let nu = p("nu")?;
            vec![vec![0, 3, nu - 4], vec![1, 4, 2 * (nu - 4)], vec![1, 6, nu - 5]]
        }
        M12 => {
            let x = p("x")?;
            vec![vec![x - 1, 2 * x + 1], vec![x, 4 * x]]
        }
        M13 => {
            // hub row: 2x+2 singles at distance one
            let x = p("x")?;
            vec![vec![x - 1, 2 * x + 2], vec![x, 2 * (2 * x + 1)]]
        }
        M14 => vec![vec![1, 5], vec![2, 0]],
        M15 => {
            let nu = p("nu")?;
            vec![vec![0, 3, nu - 4], vec![1, 0, 0], vec![1, 0, nu - 5]]
        }
    };
    Ok(QuotientMatrix::from_integers(rows, id.kind()))
}
