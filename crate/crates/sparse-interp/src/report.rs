//! Interpolation run reports: the recovered polynomial plus probe, round,
//! and candidate statistics.
//!
//! Reports are deterministic for a fixed configuration — wall time is kept
//! out of the structure by default (`wall_ms` stays `None` unless a caller
//! explicitly measures), so serialized reports are byte-identical across
//! runs. The JSON schema carries a `spec_version` so downstream scripts can
//! detect drift.

use serde::Serialize;

use crate::poly::SparsePoly;
use crate::univar::Backend;

/// Current report schema version.
pub const REPORT_SPEC_VERSION: u32 = 1;

/// Which reduction drove the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Base-changing substitutions with a fixed prime.
    Base,
    /// Modulus-changing substitutions with the base fixed at `D`.
    Modulus,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Base => write!(f, "base"),
            Algorithm::Modulus => write!(f, "modulus"),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "base" => Ok(Algorithm::Base),
            "modulus" | "mod" => Ok(Algorithm::Modulus),
            other => Err(format!("unknown algorithm `{other}`; use base or modulus")),
        }
    }
}

/// One univariate interpolation performed against the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct UnivarCallStats {
    /// Substitution base (`d` for the base-changing driver, `D` otherwise).
    pub base: u64,
    /// Substitution prime.
    pub prime: u64,
    /// Shifted coordinate, 0-based, if any.
    pub shift: Option<usize>,
    pub degree_bound: u64,
    pub term_bound: u64,
    /// Probes the backend spent on this call.
    pub probes: u64,
}

/// Statistics of one while-loop round.
#[derive(Clone, Debug, Serialize)]
pub struct RoundStats {
    /// 1-based round number.
    pub round: u32,
    /// Maximal reduced-image term count across the cached substitutions.
    pub alpha: u64,
    /// Selected index: the base `d0` (base-changing) or the prime index `j0`
    /// (modulus-changing), 1-based.
    pub selected_index: u64,
    /// The substitution prime in effect for the selected index.
    pub selected_prime: u64,
    /// Candidates produced by the term extraction.
    pub candidates: u64,
    /// Candidates that passed the term-membership test.
    pub accepted: u64,
    /// Canonical text of the accepted partial polynomial.
    pub recovered: String,
}

/// Full record of one interpolation run.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolationReport {
    pub spec_version: u32,
    pub algorithm: Algorithm,
    pub backend: Backend,
    /// Ring description, `zz` or `fq:<q>`.
    pub ring: String,
    pub arity: usize,
    /// Term bound `T` the run started from.
    pub term_bound: u64,
    /// Degree bound `D`.
    pub degree_bound: u64,
    /// The recovered polynomial, canonical text form under `Serialize`.
    pub poly: SparsePoly,
    /// Total oracle probes, as counted by the black box.
    pub probes: u64,
    /// Number of univariate interpolations performed.
    pub univariate_interpolations: u64,
    pub rounds: Vec<RoundStats>,
    pub univariate_calls: Vec<UnivarCallStats>,
    /// Wall-clock milliseconds; excluded from the determinism guarantee and
    /// absent unless explicitly measured.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl InterpolationReport {
    /// Render as pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{} ({} backend, {}): {} probes, {} univariate interpolations, {} rounds -> {}",
            self.algorithm,
            self.backend,
            self.ring,
            self.probes,
            self.univariate_interpolations,
            self.rounds.len(),
            self.poly
        )
    }
}
