//! Capability caps for the exponential-time operations.
//!
//! Each cap has a default; the environment variable
//! `SPECTRA_FACTOR_MAX_ORDER` replaces all of them with one value, clamped to
//! the hard limit of the underlying representation.

use std::sync::OnceLock;

pub const ENV_MAX_ORDER: &str = "SPECTRA_FACTOR_MAX_ORDER";

/// Hard ceiling for bitmask-based searches over vertex subsets.
pub const SUBSET_HARD_LIMIT: usize = 30;
/// Hard ceiling for labeled enumeration (the mask must fit in a `u64`).
pub const ENUMERATION_HARD_LIMIT: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// `canonical_form` / `is_isomorphic`.
    pub canonical_order: usize,
    /// `enumerate_connected`.
    pub enumeration_order: usize,
    /// `tutte_witness` / `iso_witness` full subset sweep.
    pub witness_order: usize,
    /// `has_star_cycle_factor` backtracking.
    pub star_cycle_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            canonical_order: 12,
            enumeration_order: 8,
            witness_order: 16,
            star_cycle_order: 16,
        }
    }
}

impl Limits {
    /// Defaults, with every cap replaced by `override_order` when given.
    pub fn with_override(override_order: Option<usize>) -> Self {
        let mut limits = Limits::default();
        if let Some(n) = override_order {
            limits.canonical_order = n.min(64);
            limits.enumeration_order = n.min(ENUMERATION_HARD_LIMIT);
            limits.witness_order = n.min(SUBSET_HARD_LIMIT);
            limits.star_cycle_order = n.min(SUBSET_HARD_LIMIT);
        }
        limits
    }

    fn from_env() -> Self {
        let parsed = std::env::var(ENV_MAX_ORDER)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        Limits::with_override(parsed)
    }
}

/// Process-wide limits, read from the environment on first use.
pub fn limits() -> &'static Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    LIMITS.get_or_init(Limits::from_env)
}
