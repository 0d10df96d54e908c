//! Resource caps for the operations whose cost is combinatorial.
//!
//! Exceeding a cap is always reported as [`Error::BudgetExceeded`]; nothing is silently
//! truncated. The process-wide defaults can be replaced once at startup (the CLI does this from
//! its flags); operations that take a cap also have a `_with` variant taking an explicit
//! [`Budget`].

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Caps on permutation search width, Ackermann code bound, dependent-product size and
/// multiset depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Widest node `meq_via_bijection` will search permutations for.
    pub perm_cap: u64,
    /// Exclusive upper bound on Ackermann codes for decoding and enumeration.
    pub code_bound: u64,
    /// Largest `Π |fiber|` that `pi0` will enumerate; also caps hom-set enumeration.
    pub pi_cap: u64,
    /// Deepest multiset or literal accepted.
    pub depth_cap: u64,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        perm_cap: 8,
        code_bound: 1 << 16,
        pi_cap: 1 << 16,
        depth_cap: 10_000,
    };

    /// The process-wide budget.
    pub fn current() -> Budget {
        Budget {
            perm_cap: PERM_CAP.load(Ordering::Relaxed),
            code_bound: CODE_BOUND.load(Ordering::Relaxed),
            pi_cap: PI_CAP.load(Ordering::Relaxed),
            depth_cap: DEPTH_CAP.load(Ordering::Relaxed),
        }
    }

    /// Replaces the process-wide budget. Rejects zero caps.
    pub fn install(self) -> Result<()> {
        for (what, cap) in [
            ("perm-cap", self.perm_cap),
            ("code-bound", self.code_bound),
            ("pi-cap", self.pi_cap),
            ("depth-cap", self.depth_cap),
        ] {
            if cap == 0 {
                return Err(Error::BudgetExceeded {
                    what,
                    needed: "a positive cap".into(),
                    cap,
                });
            }
        }
        PERM_CAP.store(self.perm_cap, Ordering::Relaxed);
        CODE_BOUND.store(self.code_bound, Ordering::Relaxed);
        PI_CAP.store(self.pi_cap, Ordering::Relaxed);
        DEPTH_CAP.store(self.depth_cap, Ordering::Relaxed);
        Ok(())
    }

    pub(crate) fn check(what: &'static str, needed: u64, cap: u64) -> Result<()> {
        if needed > cap {
            Err(Error::BudgetExceeded {
                what,
                needed: needed.to_string(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

static PERM_CAP: AtomicU64 = AtomicU64::new(Budget::DEFAULT.perm_cap);
static CODE_BOUND: AtomicU64 = AtomicU64::new(Budget::DEFAULT.code_bound);
static PI_CAP: AtomicU64 = AtomicU64::new(Budget::DEFAULT.pi_cap);
static DEPTH_CAP: AtomicU64 = AtomicU64::new(Budget::DEFAULT.depth_cap);

/// Product of sizes, saturating to `u64::MAX` on overflow.
pub(crate) fn saturating_product(sizes: impl IntoIterator<Item = u64>) -> u64 {
    sizes.into_iter().fold(1u64, |acc, n| acc.saturating_mul(n))
}
