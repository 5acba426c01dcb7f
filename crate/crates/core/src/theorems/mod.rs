//! Threshold statements for perfect matchings and star-cycle factors, checked
//! as verdicts on individual graphs.
//!
//! A statement reads: if the graph meets the threshold then the factor exists,
//! except that a graph isomorphic to the extremal graph meets it with equality
//! and has no factor.
//!
//! | id        | factor         | hypothesis                         |
//! |-----------|----------------|------------------------------------|
//! | `pm-kappa`| perfect match  | κ(G) ≥ κ(K(δ; (δ+1)×1, ν−2δ−1))    |
//! | `pm-mu1`  | perfect match  | μ₁(G) ≤ μ₁(K(δ; (δ+1)×1, ν−2δ−1))  |
//! | `sc-size` | star-cycle     | \|E\| ≥ 11 (ν=7), C(ν−3,2)+3 else  |
//! | `sc-rho`  | star-cycle     | ρ(G) ≥ (1+√41)/2 (ν=7), β(ν) else  |
//! | `sc-mu1`  | star-cycle     | μ₁(G) ≤ μ₁ of the extremal graph   |
//!
//! The matching statements also require ν even and large δ with ν cubic in δ;
//! graphs outside those side conditions get [`Verdict::HypothesisUnmet`].

mod facts;
mod thresholds;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{has_perfect_matching, has_star_cycle_factor};
use crate::graph::{is_isomorphic, to_graph6, Graph};
use crate::spectra::{compare_largest_roots, graph_char_poly, spectral_radius, MatrixKind};

pub use facts::{check_fact_monotonicity, fact_gap, Fact, FactParams};
pub use thresholds::{
    beta, beta_polynomial, extremal_k2, extremal_k2_spec, extremal_star_cycle, extremal_star_cycle_spec,
    h_size, size_threshold, Threshold,
};

/// Gap below which two spectral values count as tied.
pub const STRICT_MARGIN: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    PmKappa,
    PmMu1,
    ScSize,
    ScRho,
    ScMu1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] =
        [TheoremId::PmKappa, TheoremId::PmMu1, TheoremId::ScSize, TheoremId::ScRho, TheoremId::ScMu1];

    pub const STAR_CYCLE: [TheoremId; 3] = [TheoremId::ScSize, TheoremId::ScRho, TheoremId::ScMu1];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::PmKappa => "pm-kappa",
            TheoremId::PmMu1 => "pm-mu1",
            TheoremId::ScSize => "sc-size",
            TheoremId::ScRho => "sc-rho",
            TheoremId::ScMu1 => "sc-mu1",
        }
    }

    pub fn kind(self) -> ThresholdKind {
        match self {
            TheoremId::PmKappa => ThresholdKind::Kappa,
            TheoremId::PmMu1 | TheoremId::ScMu1 => ThresholdKind::Mu1,
            TheoremId::ScSize => ThresholdKind::Size,
            TheoremId::ScRho => ThresholdKind::Rho,
        }
    }

    pub fn direction(self) -> Direction {
        match self.kind() {
            ThresholdKind::Mu1 => Direction::AtMost,
            _ => Direction::AtLeast,
        }
    }

    pub fn is_matching(self) -> bool {
        matches!(self, TheoremId::PmKappa | TheoremId::PmMu1)
    }

    /// Order and degree conditions beyond the threshold itself.
    pub fn side_conditions_hold(self, nu: usize, delta: usize) -> bool {
        let (n, d) = (nu as u64, delta as u64);
        match self {
            TheoremId::PmKappa => {
                n % 2 == 0 && d >= 19 && n + 1 >= d + d * d * (d + 1) && 3 * n >= 19 * d + 9
            }
            TheoremId::PmMu1 => n % 2 == 0 && d >= 12 && 3 * n >= 2 * d * d * d && n >= 12 * d + 5,
            _ => nu >= 4,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| {
            Error::Input(format!(
                "unknown theorem {s:?} (expected pm-kappa, pm-mu1, sc-size, sc-rho or sc-mu1)"
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdKind {
    Size,
    Rho,
    Kappa,
    Mu1,
}

impl ThresholdKind {
    pub fn matrix(self) -> Option<MatrixKind> {
        match self {
            ThresholdKind::Size => None,
            ThresholdKind::Rho => Some(MatrixKind::Adjacency),
            ThresholdKind::Kappa => Some(MatrixKind::SignlessLaplacian),
            ThresholdKind::Mu1 => Some(MatrixKind::Distance),
        }
    }
}

/// Which side of the threshold triggers the factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "hypothesis-unmet")]
    HypothesisUnmet,
    #[serde(rename = "conclusion-holds")]
    ConclusionHolds,
    #[serde(rename = "exceptional-extremal")]
    ExceptionalExtremal,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::HypothesisUnmet,
        Verdict::ConclusionHolds,
        Verdict::ExceptionalExtremal,
        Verdict::Violation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HypothesisUnmet => "hypothesis-unmet",
            Verdict::ConclusionHolds => "conclusion-holds",
            Verdict::ExceptionalExtremal => "exceptional-extremal",
            Verdict::Violation => "VIOLATION",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One graph checked against one statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub graph6: String,
    pub nu: usize,
    pub m: usize,
    pub delta: usize,
    pub rho: Option<f64>,
    pub kappa: Option<f64>,
    pub mu1: Option<f64>,
    pub k2_factor: Option<bool>,
    pub star_cycle_factor: Option<bool>,
    pub theorem: TheoremId,
    pub verdict: Verdict,
    /// Signed distance into the hypothesis region, when a threshold applied.
    #[serde(skip)]
    pub gap: Option<f64>,
}

/// Compares the graph's invariant with the threshold exactly, oriented so
/// that `Greater` means strictly inside the hypothesis region.
pub fn exact_hypothesis(t: &Threshold, g: &Graph) -> Result<Ordering> {
    let ord = match (t.exact, t.kind.matrix(), &t.polynomial) {
        (Some(s), _, _) => (g.size() as u64).cmp(&s),
        (None, Some(kind), Some(p)) => compare_largest_roots(&graph_char_poly(g, kind)?, p)?,
        _ => unreachable!("spectral thresholds carry a polynomial"),
    };
    Ok(match t.direction {
        Direction::AtLeast => ord,
        Direction::AtMost => ord.reverse(),
    })
}

/// Verdict for a graph whose invariant `value` and factor flag are known.
///
/// Values within [`STRICT_MARGIN`] of the threshold are settled exactly.
pub fn classify(t: &Threshold, g: &Graph, value: f64, factor: bool) -> Result<Verdict> {
    let gap = t.gap(value);
    let met = if t.exact.is_some() || gap.abs() <= STRICT_MARGIN {
        exact_hypothesis(t, g)? != Ordering::Less
    } else {
        gap > 0.0
    };
    Ok(if !met {
        Verdict::HypothesisUnmet
    } else if factor {
        Verdict::ConclusionHolds
    } else if is_isomorphic(g, &t.extremal()?)? {
        Verdict::ExceptionalExtremal
    } else {
        Verdict::Violation
    })
}

/// Checks `g` against statement `id`.
pub fn check_theorem(id: TheoremId, g: &Graph) -> Result<VerdictRecord> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (nu, m, delta) = (g.order(), g.size(), g.min_degree());
    let mut rec = VerdictRecord {
        graph6: to_graph6(g)?,
        nu,
        m,
        delta,
        rho: None,
        kappa: None,
        mu1: None,
        k2_factor: None,
        star_cycle_factor: None,
        theorem: id,
        verdict: Verdict::HypothesisUnmet,
        gap: None,
    };
    let value = match id.kind().matrix() {
        None => m as f64,
        Some(kind) => {
            let v = spectral_radius(g, kind)?.value;
            match kind {
                MatrixKind::Adjacency => rec.rho = Some(v),
                MatrixKind::SignlessLaplacian => rec.kappa = Some(v),
                MatrixKind::Distance => rec.mu1 = Some(v),
            }
            v
        }
    };
    if !id.side_conditions_hold(nu, delta) {
        return Ok(rec);
    }
    let factor = if id.is_matching() {
        let f = has_perfect_matching(g).exists;
        rec.k2_factor = Some(f);
        f
    } else {
        let f = has_star_cycle_factor(g)?.exists;
        rec.star_cycle_factor = Some(f);
        f
    };
    let t = Threshold::new(id, nu, id.is_matching().then_some(delta))?;
    rec.gap = Some(t.gap(value));
    rec.verdict = classify(&t, g, value, factor)?;
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_is_exceptional() {
        let g = extremal_star_cycle(7).unwrap();
        for id in TheoremId::STAR_CYCLE {
            let r = check_theorem(id, &g).unwrap();
            assert_eq!(r.verdict, Verdict::ExceptionalExtremal, "{id}");
            assert_eq!(r.star_cycle_factor, Some(false));
        }
    }

    #[test]
    fn cycle_below_rho_threshold() {
        let r = check_theorem(TheoremId::ScRho, &Graph::cycle(7).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisUnmet);
        assert!((r.rho.unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn complete_graph_meets_mu1_threshold() {
        let r = check_theorem(TheoremId::ScMu1, &Graph::complete(7).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::ConclusionHolds);
        assert!((r.mu1.unwrap() - 6.0).abs() < 1e-10);
        assert!((r.gap.unwrap() - (9.2170 - 6.0)).abs() < 1e-3);
    }

    #[test]
    fn matching_side_conditions_unmet_at_small_order() {
        let g = extremal_k2(3, 14).unwrap();
        let r = check_theorem(TheoremId::PmKappa, &g).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisUnmet);
        assert!(r.kappa.is_some());
        assert!(r.k2_factor.is_none());
        assert!(TheoremId::PmKappa.side_conditions_hold(7238, 19));
        assert!(!TheoremId::PmKappa.side_conditions_hold(7236, 19));
        assert!(TheoremId::PmMu1.side_conditions_hold(1152, 12));
        assert!(!TheoremId::PmMu1.side_conditions_hold(1150, 12));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::empty(5).unwrap();
        assert!(matches!(check_theorem(TheoremId::ScSize, &g), Err(Error::Disconnected)));
    }

    #[test]
    fn record_json_shape() {
        let r = check_theorem(TheoremId::ScSize, &extremal_star_cycle(7).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in [
            "graph6", "nu", "m", "delta", "rho", "kappa", "mu1", "k2_factor",
            "star_cycle_factor", "theorem", "verdict",
        ] {
            assert!(keys.contains(&k.to_string()), "{k}");
        }
        assert_eq!(v["verdict"], "exceptional-extremal");
        assert_eq!(v["theorem"], "sc-size");
    }

    #[test]
    fn exact_escalation_settles_ties() {
        // K(1; 4, 3×1) has ρ exactly β(8)
        let t = Threshold::new(TheoremId::ScRho, 8, None).unwrap();
        let g = t.extremal().unwrap();
        assert_eq!(exact_hypothesis(&t, &g).unwrap(), Ordering::Equal);
        let v = crate::spectra::rho(&g).unwrap();
        assert_eq!(classify(&t, &g, v, false).unwrap(), Verdict::ExceptionalExtremal);
        // a perturbed value inside the tie zone is still resolved as equal
        assert_eq!(
            classify(&t, &g, v + 0.5 * STRICT_MARGIN, true).unwrap(),
            Verdict::ConclusionHolds
        );
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("1.3".parse::<TheoremId>().is_err());
    }
}
