//! Computation budgets.

/// Budget used when neither `--budget-ms` nor the environment sets one.
pub const DEFAULT_BUDGET_MS: u64 = 60_000;

/// Environment variable overriding the default budget.
pub const BUDGET_ENV: &str = "COMPALG_BUDGET_MS";

/// Rough throughput of exact arithmetic, in elementary operations per millisecond,
/// used to turn work estimates into time.
pub const OPS_PER_MS: u64 = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub ms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ms: DEFAULT_BUDGET_MS,
        }
    }
}

impl Budget {
    pub fn new(ms: u64) -> Self {
        Budget { ms }
    }

    /// Reads `COMPALG_BUDGET_MS`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    /// Estimated milliseconds for `ops` elementary operations.
    pub fn estimate_ms(ops: u128) -> u128 {
        ops / OPS_PER_MS as u128
    }

    pub fn admits(&self, ops: u128) -> bool {
        Budget::estimate_ms(ops) <= self.ms as u128
    }

    /// Generic size cap derived from the budget, for enumerations whose
    /// per-item cost is roughly constant.
    pub fn item_cap(&self, cost_per_item: u64) -> u128 {
        (self.ms as u128 * OPS_PER_MS as u128) / cost_per_item.max(1) as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimates() {
        let b = Budget::new(1);
        assert!(b.admits(OPS_PER_MS as u128));
        assert!(!b.admits(10 * OPS_PER_MS as u128));
    }
}
