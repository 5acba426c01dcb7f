//! Size and spectral cutoffs, and the graphs that attain them.

use serde::Serialize;

use super::{Direction, TheoremId, ThresholdKind};
use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};
use crate::quotient::{closed_form_matrix, MatrixId, MatrixParams};
use crate::spectra::{graph_char_poly, largest_real_root, IntegerPolynomial, MatrixKind};

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn need_order(nu: usize) -> Result<()> {
    if nu < 4 {
        return Err(Error::Domain(format!("order must be at least 4, got {nu}")));
    }
    Ok(())
}

/// `x³ − (ν−5)x² − (ν−1)x + 3ν − 15`.
pub fn beta_polynomial(nu: usize) -> Result<IntegerPolynomial> {
    need_order(nu)?;
    let n = nu as i64;
    Ok(IntegerPolynomial::from_i64(&[3 * n - 15, -(n - 1), -(n - 5), 1]))
}

/// Largest root of [`beta_polynomial`].
pub fn beta(nu: usize) -> Result<f64> {
    largest_real_root(&beta_polynomial(nu)?, None)
}

/// Edge count forcing a star-cycle factor: 11 at ν = 7, else `C(ν−3, 2) + 3`.
pub fn size_threshold(nu: usize) -> Result<u64> {
    need_order(nu)?;
    Ok(if nu == 7 { 11 } else { binom2(nu as u64 - 3) + 3 })
}

/// `h(ν, x) = C(ν−2x−1, 2) + (2x+1)x`, defined for `x ≥ 1`, `ν ≥ 3x+3`.
pub fn h_size(nu: usize, x: usize) -> Result<u64> {
    if x < 1 || nu < 3 * x + 3 {
        return Err(Error::Domain(format!("h({nu}, {x}) needs x >= 1 and nu >= 3x + 3")));
    }
    let (nu, x) = (nu as u64, x as u64);
    Ok(binom2(nu - 2 * x - 1) + (2 * x + 1) * x)
}

/// `K(δ; (δ+1)×1, ν−2δ−1)`, which has no perfect matching.
pub fn extremal_k2(delta: usize, nu: usize) -> Result<Graph> {
    Ok(extremal_k2_spec(delta, nu)?.to_graph())
}

pub fn extremal_k2_spec(delta: usize, nu: usize) -> Result<FamilySpec> {
    if delta < 1 || nu % 2 == 1 || nu < 2 * delta + 2 {
        return Err(Error::Domain(format!(
            "extremal K2 graph needs delta >= 1, even nu >= 2*delta + 2; got delta = {delta}, nu = {nu}"
        )));
    }
    FamilySpec::new(delta, [(delta + 1, 1), (1, nu - 2 * delta - 1)])
}

/// `K(2; 5×1)` at ν = 7, else `K(1; ν−4, 3×1)`.
pub fn extremal_star_cycle(nu: usize) -> Result<Graph> {
    Ok(extremal_star_cycle_spec(nu)?.to_graph())
}

pub fn extremal_star_cycle_spec(nu: usize) -> Result<FamilySpec> {
    need_order(nu)?;
    if nu == 7 {
        FamilySpec::new(2, [(5, 1)])
    } else if nu == 4 {
        FamilySpec::new(1, [(3, 1)])
    } else {
        FamilySpec::new(1, [(1, nu - 4), (3, 1)])
    }
}

/// A theorem's cutoff at fixed ν (and δ for the matching theorems).
#[derive(Debug, Clone, Serialize)]
pub struct Threshold {
    pub theorem: TheoremId,
    pub nu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    pub kind: ThresholdKind,
    pub direction: Direction,
    pub value: f64,
    /// Set for size thresholds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
    /// Polynomial whose largest root is `value`, for spectral thresholds.
    #[serde(skip)]
    pub polynomial: Option<IntegerPolynomial>,
}

impl Threshold {
    /// `delta` is required by the matching theorems and ignored otherwise.
    pub fn new(theorem: TheoremId, nu: usize, delta: Option<usize>) -> Result<Threshold> {
        let kind = theorem.kind();
        let quotient = |id: MatrixId, params: MatrixParams| -> Result<(f64, IntegerPolynomial)> {
            let q = closed_form_matrix(id, &params)?;
            Ok((q.largest_root()?, q.char_poly()))
        };
        let (value, exact, polynomial, delta) = match theorem {
            TheoremId::PmKappa | TheoremId::PmMu1 => {
                let d = delta.ok_or_else(|| Error::Domain(format!("{theorem} needs delta")))?;
                extremal_k2(d, nu)?;
                let id = if theorem == TheoremId::PmKappa { MatrixId::M2 } else { MatrixId::M6 };
                let (v, p) = quotient(id, MatrixParams::new(Some(nu), None, Some(d)))?;
                (v, None, Some(p), Some(d))
            }
            TheoremId::ScSize => {
                let s = size_threshold(nu)?;
                (s as f64, Some(s), None, None)
            }
            TheoremId::ScRho if nu == 7 => {
                let (v, p) = quotient(MatrixId::M14, MatrixParams::default())?;
                (v, None, Some(p), None)
            }
            TheoremId::ScRho => {
                let p = beta_polynomial(nu)?;
                (largest_real_root(&p, None)?, None, Some(p), None)
            }
            TheoremId::ScMu1 if nu == 7 => {
                let (v, p) = quotient(MatrixId::M12, MatrixParams::new(None, Some(2), None))?;
                (v, None, Some(p), None)
            }
            TheoremId::ScMu1 if nu == 4 => {
                // K₁,₃ has no big clique for the quotient layout
                let p = graph_char_poly(&extremal_star_cycle(4)?, MatrixKind::Distance)?;
                (largest_real_root(&p, None)?, None, Some(p), None)
            }
            TheoremId::ScMu1 => {
                need_order(nu)?;
                let (v, p) = quotient(MatrixId::M11, MatrixParams::new(Some(nu), None, None))?;
                (v, None, Some(p), None)
            }
        };
        Ok(Threshold {
            theorem,
            nu,
            delta,
            kind,
            direction: theorem.direction(),
            value,
            exact,
            polynomial,
        })
    }

    /// Signed distance into the hypothesis region: positive when met.
    pub fn gap(&self, value: f64) -> f64 {
        match self.direction {
            Direction::AtLeast => value - self.value,
            Direction::AtMost => self.value - value,
        }
    }

    /// The graph attaining the threshold.
    pub fn extremal(&self) -> Result<Graph> {
        match self.theorem {
            TheoremId::PmKappa | TheoremId::PmMu1 => {
                extremal_k2(self.delta.expect("set at construction"), self.nu)
            }
            _ => extremal_star_cycle(self.nu),
        }
    }
}
