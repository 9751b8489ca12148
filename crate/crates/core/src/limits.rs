/// Default cap on the carrier size of a single ring.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Carrier sizes up to this bound get full sweeps over every tuple.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 512;

/// Tuples drawn per axiom once a sweep switches to sampling.
pub const DEFAULT_SAMPLES: usize = 100_000;

pub const DEFAULT_SEED: u64 = 0x6d65_6164_6f77;

/// Rings up to this order get materialized operation tables.
pub(crate) const TABLE_LIMIT: usize = 1024;

/// Size and sampling policy shared by constructions and checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring order that may be constructed or enumerated.
    pub size_cap: usize,
    /// Largest carrier swept exhaustively by axiom checks.
    pub exhaustive_cap: usize,
    /// Samples per axiom in sampled mode.
    pub samples: usize,
    /// Seed of the sampling generator.
    pub seed: u64,
    /// Sample even when an exhaustive sweep would fit.
    pub force_sampling: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: DEFAULT_SIZE_CAP,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            force_sampling: false,
        }
    }
}

impl Limits {
    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sampled(mut self, force: bool) -> Self {
        self.force_sampling = force;
        self
    }

    pub(crate) fn check_size(&self, what: impl FnOnce() -> String, size: u128) -> crate::Result<()> {
        if size > self.size_cap as u128 {
            return Err(crate::Error::CapExceeded {
                what: what(),
                size,
                cap: self.size_cap,
            });
        }
        Ok(())
    }
}
