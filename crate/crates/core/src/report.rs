//! Sample plans and verification reports.

use serde::{Deserialize, Serialize};

/// Parameters of a randomized identity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplePlan {
    /// Master seed; per-sample generators derive from `(seed, suite, index)`.
    pub seed: u64,
    /// Number of random samples.
    pub count: usize,
    /// Safety margin `ε` for domain guards (distance to singular sets).
    pub margin: f64,
    /// Comparison tolerance `τ` for map and weight distances.
    pub tolerance: f64,
    /// Minimum fraction of samples that must survive the guards.
    pub min_valid_fraction: f64,
}

impl SamplePlan {
    /// The default plan used by the acceptance gate: seed 42, 10⁴ samples,
    /// margin 1e-3, tolerance 1e-9, 90% validity.
    pub fn default_exact() -> Self {
        SamplePlan {
            seed: 42,
            count: 10_000,
            margin: 1e-3,
            tolerance: 1e-9,
            min_valid_fraction: 0.9,
        }
    }

    /// Smallest number of valid samples this plan accepts.
    pub fn min_valid(&self) -> usize {
        (self.count as f64 * self.min_valid_fraction).ceil() as usize
    }
}

/// Outcome of one identity check. The wall time is kept in a separate field
/// (`millis`) that deterministic output channels zero out; all other fields
/// are a pure function of the inputs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Name of the identity/suite checked.
    pub identity: String,
    /// Model name.
    pub model: String,
    pub seed: u64,
    pub count: usize,
    pub margin: f64,
    pub tolerance: f64,
    /// Samples that passed the domain guards.
    pub valid: usize,
    /// Valid samples at which the identity failed.
    pub failed: usize,
    /// Largest observed map distance over valid samples.
    pub worst_map_err: f64,
    /// Largest observed weight distance over valid samples.
    pub worst_weight_err: f64,
    /// Description of the lowest-index failing sample, if any.
    pub first_fail: Option<String>,
    /// Wall time; excluded from determinism comparisons.
    pub millis: u64,
}

impl VerificationReport {
    /// Whether the check passed: no failures and enough valid samples.
    pub fn passed(&self, plan: &SamplePlan) -> bool {
        self.failed == 0 && self.valid >= plan.min_valid()
    }

    /// Whether the check starved: too few valid samples to conclude.
    pub fn starved(&self, plan: &SamplePlan) -> bool {
        self.valid < plan.min_valid()
    }

    /// The deterministic projection: identical runs serialize identically.
    pub fn deterministic(&self) -> VerificationReport {
        let mut r = self.clone();
        r.millis = 0;
        r
    }
}
