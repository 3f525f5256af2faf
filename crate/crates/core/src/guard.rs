use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds applied before any exhaustive computation.
///
/// Every algorithm downstream is exponential in the worst case, so hitting a
/// bound is a hard error rather than a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeGuard {
    pub max_objects: usize,
    pub max_arrows: usize,
    /// Down-sets (or up-sets, ideals) materialized for one poset.
    pub max_downsets: usize,
    /// Nodes visited by one backtracking search (natural transformations,
    /// ends, limits of hom-sets).
    pub max_search: u64,
    /// Distinct arrow ideals generated during enumeration.
    pub max_ideals: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_objects: 64,
            max_arrows: 4096,
            max_downsets: 1 << 20,
            max_search: 20_000_000,
            max_ideals: 1 << 16,
        }
    }
}

impl SizeGuard {
    pub fn check_objects(&self, n: usize) -> Result<()> {
        if n > self.max_objects {
            return Err(Error::guard("objects", n as u128, self.max_objects as u128));
        }
        Ok(())
    }

    pub fn check_arrows(&self, n: usize) -> Result<()> {
        if n > self.max_arrows {
            return Err(Error::guard("arrows", n as u128, self.max_arrows as u128));
        }
        Ok(())
    }
}

/// Counts nodes of a backtracking search against [`SizeGuard::max_search`].
#[derive(Debug)]
pub(crate) struct SearchBudget {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl SearchBudget {
    pub(crate) fn new(guard: &SizeGuard, what: &'static str) -> Self {
        SearchBudget {
            used: 0,
            limit: guard.max_search,
            what,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::guard(self.what, self.used as u128, self.limit as u128));
        }
        Ok(())
    }
}
