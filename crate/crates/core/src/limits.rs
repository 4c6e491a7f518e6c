//! Size limits shared by all computations.

/// Environment variable that overrides every group-order limit at once.
pub const MAX_ORDER_ENV: &str = "BRQ_MAX_ORDER";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group built by closure or from a table.
    pub max_group_order: usize,
    /// Largest group for H² with finite or Q/Z coefficients.
    pub h2_finite_order: usize,
    /// Largest group for H² with lattice coefficients.
    pub h2_lattice_order: usize,
    /// Largest lattice rank.
    pub lattice_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 4096,
            h2_finite_order: 96,
            h2_lattice_order: 24,
            lattice_rank: 8,
        }
    }
}

impl Limits {
    /// Defaults, with every order limit replaced by `BRQ_MAX_ORDER` if set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            l = l.with_max_order(n);
        }
        l
    }

    /// Replaces every group-order limit by `n`.
    pub fn with_max_order(mut self, n: usize) -> Self {
        self.max_group_order = n;
        self.h2_finite_order = n;
        self.h2_lattice_order = n;
        self
    }

    pub(crate) fn check(what: &str, actual: usize, limit: usize) -> crate::Result<()> {
        if actual > limit {
            return Err(crate::Error::SizeLimit {
                what: what.to_string(),
                actual,
                limit,
            });
        }
        Ok(())
    }
}
