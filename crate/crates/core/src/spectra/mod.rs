//! Graph matrices and their spectra.
//!
//! Naming note: the signless Laplacian is written `K(G)` in the literature
//! these checks come from, which collides with the `K(a; …)` family notation.
//! Here it is always `signless_laplacian` / [`MatrixKind::SignlessLaplacian`]
//! and its radius `kappa`.

mod eigen;
mod poly;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use eigen::all_below;
pub use poly::{char_poly, char_poly_i64, char_poly_rational, IntegerPolynomial};
pub use roots::{
    compare_largest_root_to, compare_largest_roots, gcd, largest_real_root, real_roots, sign_at,
    squarefree,
};

/// Default bound on the reported eigenvalue error.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Checks shape, finiteness and exact symmetry.
    pub fn new(n: usize, data: Vec<f64>) -> Result<SymmetricMatrix> {
        if n == 0 {
            return Err(Error::Input("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::Input(format!("expected {} entries, got {}", n * n, data.len())));
        }
        if let Some(bad) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!("non-finite entry at ({}, {})", bad / n, bad % n)));
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::Input(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<SymmetricMatrix> {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SymmetricMatrix::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    /// Rows and columns `idx`, in that order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<SymmetricMatrix> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, order: self.n });
        }
        SymmetricMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// Entries as exact integers, when every entry is integral.
    pub fn to_integer(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let x = self.get(i, j);
                        (x.fract() == 0.0 && x.abs() < 9.0e15).then(|| BigInt::from(x as i64))
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact characteristic polynomial; integer entries only.
    pub fn char_poly(&self) -> Result<IntegerPolynomial> {
        let m = self
            .to_integer()
            .ok_or_else(|| Error::Numeric("characteristic polynomial needs integer entries".into()))?;
        Ok(char_poly(&m))
    }

    /// Every eigenvalue lies strictly below `t`.
    pub fn all_eigenvalues_below(&self, t: f64) -> bool {
        all_below(&self.data, self.n, t)
    }

    /// All eigenvalues ascending, by Jacobi rotations.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen::jacobi(&self.data, self.n).0
    }

    /// Unit eigenvector of the largest eigenvalue, sign-normalized so the
    /// entry sum is non-negative.
    pub fn dominant_eigenvector(&self) -> Vec<f64> {
        let n = self.n;
        let (_, vecs) = eigen::jacobi(&self.data, n);
        let mut v: Vec<f64> = (0..n).map(|k| vecs[k * n + n - 1]).collect();
        if v.iter().sum::<f64>() < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}

/// Which graph matrix a value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// `A(G)`; radius ρ.
    Adjacency,
    /// `diag(deg) + A(G)`; radius κ.
    SignlessLaplacian,
    /// Shortest-path distances; radius μ₁.
    Distance,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 3] = [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian, MatrixKind::Distance];

    /// `rho`, `kappa`, `mu1`.
    pub fn symbol(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "rho",
            MatrixKind::SignlessLaplacian => "kappa",
            MatrixKind::Distance => "mu1",
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "A",
            MatrixKind::SignlessLaplacian => "Q",
            MatrixKind::Distance => "D",
        }
    }

    pub fn matrix(self, g: &Graph) -> Result<SymmetricMatrix> {
        match self {
            MatrixKind::Adjacency => Ok(adjacency_matrix(g)),
            MatrixKind::SignlessLaplacian => Ok(signless_laplacian(g)),
            MatrixKind::Distance => distance_matrix(g),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<MatrixKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rho" | "a" | "adjacency" | "ρ" => Ok(MatrixKind::Adjacency),
            "kappa" | "q" | "k" | "signless-laplacian" | "κ" => Ok(MatrixKind::SignlessLaplacian),
            "mu1" | "d" | "distance" | "μ₁" => Ok(MatrixKind::Distance),
            _ => Err(Error::Input(format!("unknown matrix kind {s:?}"))),
        }
    }
}

/// Largest eigenvalue with an error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralValue {
    pub value: f64,
    /// `None` for matrices not built from a graph.
    pub kind: Option<MatrixKind>,
    pub residual: f64,
}

pub fn adjacency_matrix(g: &Graph) -> SymmetricMatrix {
    let n = g.order();
    let data = (0..n * n).map(|k| f64::from(u8::from(g.has_edge(k / n, k % n)))).collect();
    SymmetricMatrix { n, data }
}

pub fn signless_laplacian(g: &Graph) -> SymmetricMatrix {
    let mut m = adjacency_matrix(g);
    for v in 0..g.order() {
        m.data[v * g.order() + v] = g.degree(v) as f64;
    }
    m
}

/// Distances as integers; `Error::Disconnected` when some pair is unreachable.
pub fn distances(g: &Graph) -> Result<Vec<Vec<u32>>> {
    (0..g.order())
        .map(|s| {
            g.bfs_distances(s)
                .into_iter()
                .map(|d| d.map(|d| d as u32).ok_or(Error::Disconnected))
                .collect()
        })
        .collect()
}

pub fn distance_matrix(g: &Graph) -> Result<SymmetricMatrix> {
    let d = distances(g)?;
    let n = g.order();
    let data = (0..n * n).map(|k| f64::from(d[k / n][k % n])).collect();
    Ok(SymmetricMatrix { n, data })
}

/// Sum of distances over unordered pairs.
pub fn wiener_index(g: &Graph) -> Result<u64> {
    let d = distances(g)?;
    Ok(d.iter().flatten().map(|&x| u64::from(x)).sum::<u64>() / 2)
}

/// Largest eigenvalue at the default tolerance.
pub fn largest_eigenvalue(m: &SymmetricMatrix) -> Result<SpectralValue> {
    largest_eigenvalue_with_tolerance(m, DEFAULT_TOLERANCE)
}

/// Fails with `Error::Numeric` when the error bound exceeds `tolerance`.
pub fn largest_eigenvalue_with_tolerance(m: &SymmetricMatrix, tolerance: f64) -> Result<SpectralValue> {
    let (value, residual) = eigen::largest(&m.data, m.n);
    if !value.is_finite() || residual > tolerance {
        return Err(Error::Numeric(format!(
            "eigenvalue {value} has error bound {residual:e} above tolerance {tolerance:e}"
        )));
    }
    Ok(SpectralValue { value, kind: None, residual })
}

/// ρ, κ or μ₁ of `g`.
pub fn spectral_radius(g: &Graph, kind: MatrixKind) -> Result<SpectralValue> {
    let mut v = largest_eigenvalue(&kind.matrix(g)?)?;
    v.kind = Some(kind);
    Ok(v)
}

pub fn rho(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(g, MatrixKind::Adjacency)?.value)
}

pub fn kappa(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(g, MatrixKind::SignlessLaplacian)?.value)
}

pub fn mu1(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(g, MatrixKind::Distance)?.value)
}

/// Exact characteristic polynomial of a graph matrix.
pub fn graph_char_poly(g: &Graph, kind: MatrixKind) -> Result<IntegerPolynomial> {
    kind.matrix(g)?.char_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn k2_signless_laplacian() {
        let g = Graph::complete(2).unwrap();
        assert_eq!(signless_laplacian(&g).row_sums(), vec![2.0, 2.0]);
        assert!((kappa(&g).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_radii() {
        for n in 2..10 {
            let g = Graph::complete(n).unwrap();
            assert!((kappa(&g).unwrap() - 2.0 * (n as f64 - 1.0)).abs() < 1e-10);
            assert!((mu1(&g).unwrap() - (n as f64 - 1.0)).abs() < 1e-10);
            assert_eq!(wiener_index(&g).unwrap() as usize, n * (n - 1) / 2);
        }
    }

    #[test]
    fn cycle_is_two_regular() {
        assert!((rho(&Graph::cycle(4).unwrap()).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn path_distances() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(distance_matrix(&p3).unwrap().get(0, 2), 2.0);
        assert_eq!(wiener_index(&p3).unwrap(), 4);
    }

    #[test]
    fn disconnected_distance_fails() {
        let g = Graph::empty(2).unwrap();
        assert!(matches!(distance_matrix(&g), Err(Error::Disconnected)));
        assert!(matches!(wiener_index(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn rim_singletons_at_distance_two() {
        let g = FamilySpec::new(2, [(5, 1)]).unwrap().to_graph();
        let d = distance_matrix(&g).unwrap();
        for i in 2..7 {
            for j in 2..7 {
                assert_eq!(d.get(i, j), if i == j { 0.0 } else { 2.0 });
            }
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(SymmetricMatrix::new(1, vec![f64::NAN]), Err(Error::Numeric(_))));
        assert!(SymmetricMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
    }

    #[test]
    fn graph_char_poly_of_k3() {
        // (x − 2)(x + 1)²
        let p = graph_char_poly(&Graph::complete(3).unwrap(), MatrixKind::Adjacency).unwrap();
        assert_eq!(p, IntegerPolynomial::from_i64(&[-2, -3, 0, 1]));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("mu1".parse::<MatrixKind>().unwrap(), MatrixKind::Distance);
        assert_eq!("kappa".parse::<MatrixKind>().unwrap(), MatrixKind::SignlessLaplacian);
        assert!("lambda".parse::<MatrixKind>().is_err());
    }
}
