//! Deterministic sparse multivariate polynomial interpolation from black-box
//! evaluation oracles.
//!
//! A polynomial `f` in `n` variables over the integers or a prime field is
//! accessible only through point evaluations. Given a term-count bound `T` and
//! a degree bound `D`, the two drivers in this crate recover `f` exactly:
//!
//! * [`interp_base::interpolate_base`] — *base-changing* substitutions: map
//!   `x_i -> x^(d^(i-1) mod p)` for a fixed prime `p` and many bases `d`.
//! * [`interp_mod::interpolate_mod`] — *modulus-changing* substitutions: fix
//!   the base at `D` and vary the prime modulus over the first primes.
//!
//! Each round selects a substitution in which at least half of the remaining
//! terms do not collide, reconstructs candidate multivariate terms from `n`
//! coordinate-shifted images ([`tsterms`]), and keeps exactly the candidates
//! that pass a term-membership test counted across substitutions. Everything
//! is deterministic: no randomization, no discrete logarithms, no root
//! factorization, and all arithmetic is exact.
//!
//! Univariate images are interpolated by a pluggable backend ([`univar`]):
//! dense Newton/Lagrange interpolation, or sparse Ben-or–Tiwari driven by
//! Berlekamp–Massey. [`verify`] holds independent brute-force oracles
//! (collision censuses, combinatorial bound checks) used to falsify the fast
//! paths in tests.
//!
//! See the crate `examples/` directory for runnable walk-throughs of each
//! capability; the thin `interp` binary wraps the same entry points for the
//! command line.

pub mod blackbox;
pub mod gen;
pub mod interp_base;
pub mod interp_mod;
pub mod kronecker;
pub mod poly;
pub mod primes;
pub mod report;
pub mod ring;
pub mod suites;
pub mod tsterms;
pub mod univar;
pub mod verify;

pub use blackbox::{parse_expr, parse_poly_file, BlackBox, ExprTree, PolyFile};
pub use interp_base::{interpolate_base, BaseParams};
pub use interp_mod::{compute_mod_params, interpolate_mod, ModParams};
pub use kronecker::{image_point, interpolate_image, substitute_sparse, SubstitutionSpec};
pub use poly::{ExponentVector, SparsePoly, UniPoly};
pub use report::{Algorithm, InterpolationReport, RoundStats, UnivarCallStats};
pub use ring::Ring;
pub use tsterms::{ts_terms, CandidateSet};
pub use univar::Backend;

use num_bigint::BigInt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A modulus handed to [`Ring::prime_field`] failed the primality check.
    #[error("not prime: {0}")]
    NotPrime(BigInt),
    /// The coefficient ring has too few usable elements for the requested
    /// operation (evaluation points or element order).
    #[error("ring too small: need {needed} usable elements, field has order {order}")]
    RingTooSmall { needed: BigInt, order: BigInt },
    /// Two operands live in different rings.
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    /// A point or polynomial has the wrong number of variables.
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    /// Malformed expression or polynomial text.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// A variable outside `x1..xn` appeared in an expression.
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    /// Transposed Vandermonde system with repeated roots.
    #[error("singular system: repeated root {0}")]
    SingularSystem(BigInt),
    /// A univariate backend's structural assumptions failed; usually means the
    /// supplied term bound is below the actual number of terms.
    #[error("backend failure: {0}")]
    BackendFailure(String),
    /// The interpolation drivers detected that the supplied `T`/`D` bounds
    /// cannot hold for the oracle.
    #[error("bounds violated: {0}")]
    BoundsViolated(String),
    /// Debug-mode contract check failed.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}
