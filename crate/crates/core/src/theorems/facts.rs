//! Monotonicity of κ and μ₁ when clique sizes behind a hub are rebalanced.
//!
//! For `G = K(x; ν₁, …, ν_s)` with `ν₁ ≥ … ≥ ν_s ≥ r ≥ 1`, compare against
//! the concentrated graph `K(x; ν−x−r(s−1), (s−1)×r)`: κ grows and μ₁
//! shrinks under concentration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FamilySpec;
use crate::spectra::{kappa, mu1};

use super::STRICT_MARGIN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fact {
    /// κ(concentrated) > κ(G).
    KappaConcentration,
    /// μ₁(G) > μ₁(concentrated).
    Mu1Balance,
}

impl Fact {
    pub fn as_str(self) -> &'static str {
        match self {
            Fact::KappaConcentration => "kappa-concentration",
            Fact::Mu1Balance => "mu1-balance",
        }
    }
}

impl std::str::FromStr for Fact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fact> {
        [Fact::KappaConcentration, Fact::Mu1Balance]
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown fact {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactParams {
    /// Hub size `|X|`.
    pub x: usize,
    pub r: usize,
    /// `ν₁ ≥ … ≥ ν_s`.
    pub parts: Vec<usize>,
}

impl FactParams {
    pub fn order(&self) -> usize {
        self.x + self.parts.iter().sum::<usize>()
    }

    fn validate(&self) -> Result<()> {
        let s = self.parts.len();
        let fail = |why: &str| Err(Error::Domain(format!("{why}: {self:?}")));
        if self.x < 1 {
            return fail("hub must be nonempty");
        }
        if s < 2 {
            return fail("need at least two parts");
        }
        if self.r < 1 || self.parts.windows(2).any(|w| w[0] < w[1]) || self.parts[s - 1] < self.r {
            return fail("parts must be non-increasing and at least r >= 1");
        }
        if self.parts[0] >= self.concentrated_big() {
            return fail("largest part must be below the concentrated size");
        }
        Ok(())
    }

    fn concentrated_big(&self) -> usize {
        self.order() - self.x - self.r * (self.parts.len() - 1)
    }

    fn graphs(&self) -> Result<(crate::graph::Graph, crate::graph::Graph)> {
        self.validate()?;
        let balanced = FamilySpec::with_sizes(self.x, &self.parts)?.to_graph();
        let concentrated =
            FamilySpec::new(self.x, [(1, self.concentrated_big()), (self.parts.len() - 1, self.r)])?
                .to_graph();
        Ok((balanced, concentrated))
    }
}

/// Size of the claimed strict inequality, positive when it holds.
pub fn fact_gap(fact: Fact, params: &FactParams) -> Result<f64> {
    let (balanced, concentrated) = params.graphs()?;
    Ok(match fact {
        Fact::KappaConcentration => kappa(&concentrated)? - kappa(&balanced)?,
        Fact::Mu1Balance => mu1(&balanced)? - mu1(&concentrated)?,
    })
}

/// Whether the strict inequality holds by more than the numeric margin.
pub fn check_fact_monotonicity(fact: Fact, params: &FactParams) -> Result<bool> {
    Ok(fact_gap(fact, params)? > STRICT_MARGIN)
}
