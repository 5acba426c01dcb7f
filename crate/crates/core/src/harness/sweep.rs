//! Threshold tables over a range of orders.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::theorems::{beta, size_threshold, Threshold, TheoremId};

/// One order's thresholds. Columns outside the selection are empty.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepRow {
    pub nu: usize,
    pub size_threshold: Option<u64>,
    /// Largest root of the cubic, also reported at ν = 7.
    pub beta: Option<f64>,
    /// The ρ cutoff actually used: `(1+√41)/2` at ν = 7, else β(ν).
    pub rho_threshold: Option<f64>,
    pub mu1_threshold: Option<f64>,
    /// κ of the matching extremal graph, for even ν ≥ 2δ+2.
    pub kappa_k2: Option<f64>,
    pub mu1_k2: Option<f64>,
}

/// Rows for `orders`; `theorem = None` selects every star-cycle column, plus
/// the matching columns when `delta` is given.
pub fn sweep(
    orders: RangeInclusive<usize>,
    theorem: Option<TheoremId>,
    delta: Option<usize>,
) -> Result<Vec<SweepRow>> {
    if orders.is_empty() || *orders.start() < 4 {
        return Err(Error::Domain(format!("sweep orders must start at 4 or more, got {orders:?}")));
    }
    let want = |t: TheoremId| match theorem {
        Some(s) => s == t,
        None => !t.is_matching() || delta.is_some(),
    };
    if theorem.is_some_and(TheoremId::is_matching) && delta.is_none() {
        return Err(Error::Input(format!("{} needs --delta", theorem.expect("checked"))));
    }
    let k2 = |t: TheoremId, nu: usize| -> Result<Option<f64>> {
        let d = delta.expect("matching columns need delta");
        if nu % 2 == 1 || nu < 2 * d + 2 {
            return Ok(None);
        }
        Ok(Some(Threshold::new(t, nu, Some(d))?.value))
    };
    orders
        .map(|nu| {
            let mut row = SweepRow { nu, ..Default::default() };
            if want(TheoremId::ScSize) {
                row.size_threshold = Some(size_threshold(nu)?);
            }
            if want(TheoremId::ScRho) {
                row.beta = Some(beta(nu)?);
                row.rho_threshold = Some(Threshold::new(TheoremId::ScRho, nu, None)?.value);
            }
            if want(TheoremId::ScMu1) {
                row.mu1_threshold = Some(Threshold::new(TheoremId::ScMu1, nu, None)?.value);
            }
            if want(TheoremId::PmKappa) {
                row.kappa_k2 = k2(TheoremId::PmKappa, nu)?;
            }
            if want(TheoremId::PmMu1) {
                row.mu1_k2 = k2(TheoremId::PmMu1, nu)?;
            }
            Ok(row)
        })
        .collect()
}
