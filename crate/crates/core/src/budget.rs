//! Node-expansion budgets for exponential searches.

/// Default number of node expansions allowed to a budgeted search.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Counts search-node expansions; exhaustion is reported, never a panic.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Charges one expansion; returns `false` once the limit is exceeded.
    #[inline]
    pub fn spend(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used > self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

/// Result of a budgeted exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    /// The search completed; the value is exact.
    Exact(T),
    /// Budget ran out; best value found so far, if any.
    Unknown(Option<T>),
}

impl<T> Search<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            Search::Exact(t) => Some(t),
            Search::Unknown(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Search::Exact(_))
    }

    pub fn best(&self) -> Option<&T> {
        match self {
            Search::Exact(t) => Some(t),
            Search::Unknown(t) => t.as_ref(),
        }
    }
}
