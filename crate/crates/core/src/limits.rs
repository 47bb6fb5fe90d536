//! Enumeration budgets.
//!
//! Every exhaustive search in the crate is metered. The global cap comes from
//! the `MORITAKIT_MAX_ENUM` environment variable (default 10^6 candidates per
//! single enumeration); individual operations may pass a tighter limit.

use std::cell::Cell;

pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

/// Reads the global per-enumeration candidate cap.
pub fn max_enum() -> u64 {
    std::env::var("MORITAKIT_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// A step-countdown shared by one enumeration. Cloning shares nothing; pass by
/// reference into recursive helpers.
#[derive(Debug)]
pub struct Budget {
    left: Cell<u64>,
    initial: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            left: Cell::new(limit),
            initial: limit,
        }
    }

    pub fn standard() -> Self {
        Self::new(max_enum())
    }

    /// Consumes one candidate; `false` once the budget is exhausted.
    pub fn step(&self) -> bool {
        let left = self.left.get();
        if left == 0 {
            return false;
        }
        self.left.set(left - 1);
        true
    }

    pub fn initial(&self) -> u64 {
        self.initial
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_counts_down() {
        let b = Budget::new(2);
        assert!(b.step());
        assert!(b.step());
        assert!(!b.step());
        assert!(!b.step());
    }
}
