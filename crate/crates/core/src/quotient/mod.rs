//! Equitable partitions and quotient matrices.

mod closed_form;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{
    char_poly_rational, largest_eigenvalue, largest_real_root, IntegerPolynomial, MatrixKind,
    SpectralValue,
};

pub use closed_form::{closed_form_matrix, FamilyLayout, MatrixId, MatrixParams, Role};

/// Agreement bound between a full matrix radius and its quotient radius.
pub const AGREEMENT_TOLERANCE: f64 = 1e-8;

/// Ordered partition of `0..order` into nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSpec {
    cells: Vec<Vec<usize>>,
}

impl PartitionSpec {
    pub fn new(order: usize, cells: Vec<Vec<usize>>) -> Result<PartitionSpec> {
        let mut seen = vec![false; order];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::Partition(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= order {
                    return Err(Error::Partition(format!("vertex {v} outside 0..{order}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Partition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Partition(format!("vertex {missing} is in no cell")));
        }
        Ok(PartitionSpec { cells })
    }

    /// The partition with one cell.
    pub fn trivial(order: usize) -> PartitionSpec {
        PartitionSpec { cells: vec![(0..order).collect()] }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn order(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }
}

/// Quotient of a graph matrix: entry `(i, j)` is the average over cell `i`
/// of the row sums into cell `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    entries: Vec<Vec<BigRational>>,
    kind: MatrixKind,
    equitable: bool,
}

impl QuotientMatrix {
    /// Builds a matrix from integer entries already known to come from an
    /// equitable partition.
    pub(crate) fn from_integers(entries: Vec<Vec<i64>>, kind: MatrixKind) -> QuotientMatrix {
        QuotientMatrix {
            entries: entries
                .into_iter()
                .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
                .collect(),
            kind,
            equitable: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn is_equitable(&self) -> bool {
        self.equitable
    }

    /// Entries as `i64`, when all are integers that fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten()).collect())
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// `det(xI − M)`, scaled to a primitive integer polynomial (monic when the
    /// entries are integers).
    pub fn char_poly(&self) -> IntegerPolynomial {
        char_poly_rational(&self.entries)
    }

    pub fn largest_root(&self) -> Result<f64> {
        largest_real_root(&self.char_poly(), None)
    }

    /// Same rows and columns, reordered: new cell `k` is old cell `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> QuotientMatrix {
        QuotientMatrix {
            entries: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
            kind: self.kind,
            equitable: self.equitable,
        }
    }

    /// JSON-ready report.
    pub fn report(&self, id: Option<MatrixId>, params: Option<MatrixParams>) -> Result<MatrixReport> {
        let charpoly = self.char_poly();
        Ok(MatrixReport {
            id: id.map(|i| i.to_string()),
            params,
            kind: self.kind,
            entries: self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            charpoly_text: charpoly.to_string(),
            largest_root: largest_real_root(&charpoly, None)?,
            charpoly,
        })
    }
}

/// `{id, params, entries, charpoly, largest_root}`.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<MatrixParams>,
    pub kind: MatrixKind,
    pub entries: Vec<Vec<String>>,
    pub charpoly: IntegerPolynomial,
    pub charpoly_text: String,
    pub largest_root: f64,
}

fn integer_matrix(g: &Graph, kind: MatrixKind) -> Result<Vec<Vec<i64>>> {
    let n = g.order();
    Ok(match kind {
        MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            if kind == MatrixKind::SignlessLaplacian {
                                g.degree(i) as i64
                            } else {
                                0
                            }
                        } else {
                            i64::from(g.has_edge(i, j))
                        }
                    })
                    .collect()
            })
            .collect(),
        MatrixKind::Distance => crate::spectra::distances(g)?
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect(),
    })
}

/// Per-cell block row sums: `sums[i][j][k]` is the row sum of the `k`-th
/// vertex of cell `i` into cell `j`.
fn block_sums(g: &Graph, kind: MatrixKind, pi: &PartitionSpec) -> Result<Vec<Vec<Vec<i64>>>> {
    if pi.order() != g.order() {
        return Err(Error::Partition(format!(
            "partition covers {} vertices, graph has {}",
            pi.order(),
            g.order()
        )));
    }
    let m = integer_matrix(g, kind)?;
    Ok(pi
        .cells
        .iter()
        .map(|ci| {
            pi.cells
                .iter()
                .map(|cj| ci.iter().map(|&u| cj.iter().map(|&v| m[u][v]).sum()).collect())
                .collect()
        })
        .collect())
}

/// Every block of the chosen matrix has constant row sums.
pub fn is_equitable(g: &Graph, kind: MatrixKind, pi: &PartitionSpec) -> Result<bool> {
    let sums = block_sums(g, kind, pi)?;
    Ok(sums.iter().flatten().all(|rows| rows.windows(2).all(|w| w[0] == w[1])))
}

pub fn quotient_matrix(g: &Graph, kind: MatrixKind, pi: &PartitionSpec) -> Result<QuotientMatrix> {
    let sums = block_sums(g, kind, pi)?;
    let equitable = sums.iter().flatten().all(|rows| rows.windows(2).all(|w| w[0] == w[1]));
    let entries = sums
        .iter()
        .map(|row| {
            row.iter()
                .map(|rows| {
                    let total: i64 = rows.iter().sum();
                    BigRational::new(BigInt::from(total), BigInt::from(rows.len()))
                })
                .collect()
        })
        .collect();
    Ok(QuotientMatrix { entries, kind, equitable })
}

/// Largest eigenvalue of the full matrix against the largest root of the
/// quotient's characteristic polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct RadiusCheck {
    pub full: SpectralValue,
    pub quotient: SpectralValue,
    pub agree: bool,
}

pub fn verify_quotient_radius(g: &Graph, kind: MatrixKind, pi: &PartitionSpec) -> Result<RadiusCheck> {
    let q = quotient_matrix(g, kind, pi)?;
    if !q.equitable {
        return Err(Error::NotEquitable(kind.letter()));
    }
    let mut full = largest_eigenvalue(&kind.matrix(g)?)?;
    full.kind = Some(kind);
    let root = q.largest_root()?;
    let quotient = SpectralValue {
        value: root,
        kind: Some(kind),
        residual: 1e-12 * root.abs().max(1.0),
    };
    Ok(RadiusCheck {
        agree: (full.value - root).abs() <= AGREEMENT_TOLERANCE,
        full,
        quotient,
    })
}
