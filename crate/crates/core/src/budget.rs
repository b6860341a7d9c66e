use crate::error::{Error, Result};

/// Step budget for long searches.
///
/// A search ticks the budget once per unit of work (one candidate tried, one
/// element visited) and stops with [`Error::BudgetExhausted`] when it runs out,
/// instead of running without bound.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget {
            limit: None,
            used: 0,
        }
    }

    pub const fn new(steps: u64) -> Self {
        Budget {
            limit: Some(steps),
            used: 0,
        }
    }

    pub fn from_limit(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn tick(&mut self, steps: u64) -> Result<()> {
        self.used = self.used.saturating_add(steps);
        match self.limit {
            Some(limit) if self.used > limit => Err(Error::BudgetExhausted(limit)),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts_after_limit() {
        let mut b = Budget::new(3);
        assert!(b.tick(2).is_ok());
        assert!(b.tick(1).is_ok());
        assert_eq!(b.tick(1), Err(Error::BudgetExhausted(3)));
        let mut u = Budget::unlimited();
        assert!(u.tick(u64::MAX).is_ok());
    }
}
