//! Fixed limits and seeds. Every report that samples uses these values so
//! reruns with the same flags produce identical output.

/// Default seed for sampled axiom validation and sampled consistency checks.
pub const DEFAULT_SEED: u64 = 0x5eed_2d0c_1a55;

/// Largest ring (element count) that any constructor will produce.
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 20;

/// Largest monomial basis for a quotient presentation.
pub const DEFAULT_BASIS_CAP: usize = 4096;

/// Rings up to this order get a materialized multiplication table.
pub const TABLE_LIMIT: usize = 1024;

/// Exhaustive axiom validation runs when `n^3` is at most this many triples.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1 << 24;

/// Number of random triples checked when exhaustive validation is too large.
pub const DEFAULT_SAMPLE_TRIPLES: u64 = 1 << 16;

/// Largest ring whose annihilators are found by a full pair scan when no
/// vector-space structure over a prime field is available.
pub const BRUTE_FORCE_LIMIT: usize = 8192;

/// Largest zero-divisor set for which the classic graph on individual zero
/// divisors is built.
pub const CLASSIC_GRAPH_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationConfig {
    pub exhaustive_budget: u64,
    pub sample_triples: u64,
    pub seed: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            sample_triples: DEFAULT_SAMPLE_TRIPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Construction limits applied when a `RingSpec` is turned into a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    pub basis_cap: usize,
    pub validation: ValidationConfig,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
            basis_cap: DEFAULT_BASIS_CAP,
            validation: ValidationConfig::default(),
        }
    }
}

impl Limits {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.validation.seed = seed;
        self
    }
}
