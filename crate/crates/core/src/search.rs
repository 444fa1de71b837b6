//! Shared search plumbing: node budgets and three-valued outcomes.

use serde::{Deserialize, Serialize};

/// Default decision-node budget for every exact search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Result of a budgeted exact search. `Indeterminate` means the budget ran out
/// before the search space was exhausted; it is never a "no".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    NotFound,
    Indeterminate,
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Search::Indeterminate)
    }

    pub fn status(&self) -> Status {
        match self {
            Search::Found(_) => Status::Found,
            Search::NotFound => Status::NotFound,
            Search::Indeterminate => Status::Indeterminate,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::NotFound => Search::NotFound,
            Search::Indeterminate => Search::Indeterminate,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Found,
    NotFound,
    Indeterminate,
}

/// Counts decision nodes against a limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

pub(crate) struct OutOfBudget;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Remaining nodes before the limit.
    pub(crate) fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }

    pub(crate) fn charge(&mut self, nodes: u64) {
        self.used += nodes;
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.used += 1;
        if self.used > self.limit {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
