//! Tolerances and search caps shared across the pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the Weyl group order (admits E7, excludes E8).
pub const DEFAULT_WEYL_ORDER_CAP: u64 = 3_000_000;

/// Environment variable that overrides [`DEFAULT_WEYL_ORDER_CAP`].
pub const WEYL_CAP_ENV: &str = "VERLINDE_WEYL_CAP";

/// Default number of labels up to which fusion automorphisms are searched exhaustively.
pub const DEFAULT_AUTOMORPHISM_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Algebraic identities of S (unitarity, symmetry, S^2 rounding).
    pub num: f64,
    /// The modular relation (ST)^3 = S^2.
    pub modular: f64,
    /// Integer extraction from Verlinde-type sums.
    pub int: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            num: 1e-8,
            modular: 1e-6,
            int: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("num", self.num), ("modular", self.modular), ("int", self.int)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("tolerance `{name}` must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Weyl order cap from `VERLINDE_WEYL_CAP`, falling back to the default.
pub fn weyl_order_cap_from_env() -> Result<u64> {
    match std::env::var(WEYL_CAP_ENV) {
        Ok(raw) => parse_cap(&raw),
        Err(_) => Ok(DEFAULT_WEYL_ORDER_CAP),
    }
}

fn parse_cap(raw: &str) -> Result<u64> {
    match raw.trim().parse::<u64>() {
        Ok(cap) if cap > 0 => Ok(cap),
        _ => Err(Error::InvalidConfig(format!("{WEYL_CAP_ENV} must be a positive integer, got `{raw}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Tolerances::default().validate().unwrap();
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        let t = Tolerances { int: 0.0, ..Tolerances::default() };
        assert!(t.validate().is_err());
    }

    #[test]
    fn cap_parsing() {
        assert_eq!(parse_cap(" 42 ").unwrap(), 42);
        assert!(parse_cap("0").is_err());
        assert!(parse_cap("lots").is_err());
    }
}
