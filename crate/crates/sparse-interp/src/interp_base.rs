//! Multivariate interpolation by base-changing substitutions.
//!
//! One prime `p` is fixed for the whole run; the substitution base `d` ranges
//! over `1..=N`. Each round:
//!
//! 1. pick the base `d0` whose reduced image has the most terms — at least
//!    half of the remaining terms are collision-free there,
//! 2. interpolate the `n` coordinate-shifted images at `d0`, subtract the
//!    symbolic images of everything already recovered, and extract candidate
//!    terms ([`crate::tsterms`]),
//! 3. keep a candidate only if subtracting its image shrinks the reduced
//!    image term count for at least `delta2 + 1` of the first
//!    `delta1 + delta2 + 1` bases — an exact membership criterion,
//! 4. move the accepted terms into the running result, shrink the term bound,
//!    and update the cached images by symbolic subtraction.
//!
//! The `N` unshifted images are interpolated once up front and never
//! re-probed; rounds only subtract from them. Each round halves the
//! uncovered terms, so `ceil(log2 t) + 1` rounds suffice; the driver allows
//! one spare round and then reports [`Error::BoundsViolated`], which is also
//! how backend failures (term bound below the truth) surface.

use num_bigint::BigInt;
use num_bigint::BigUint;

use crate::blackbox::BlackBox;
use crate::kronecker::{interpolate_image, substitute_sparse, SubstitutionSpec};
use crate::poly::{ExponentVector, SparsePoly, UniPoly};
use crate::primes::next_prime_geq;
use crate::report::{
    Algorithm, InterpolationReport, RoundStats, UnivarCallStats, REPORT_SPEC_VERSION,
};
use crate::tsterms::ts_terms;
use crate::univar::Backend;
use crate::{ceil_log2, Error, Result};

/// Thresholds of the base-changing reduction.
///
/// `delta1 = (n-1)(T-1)`, `delta2 = (n-1)T`,
/// `N = max(4*delta1 + 1, delta1 + delta2 + 1)`, and `p` is the smallest
/// prime at or above `max(n, N, D)`. The prime is chosen once from the
/// initial `T` and never changes; the `T`-dependent thresholds shrink as
/// terms are recovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseParams {
    pub arity: usize,
    pub term_bound: u64,
    pub degree_bound: u64,
    pub delta1: u64,
    pub delta2: u64,
    pub num_images: u64,
    pub prime: u64,
}

fn thresholds(arity: usize, term_bound: u64) -> (u64, u64, u64) {
    let n_minus_1 = arity as u64 - 1;
    let delta1 = n_minus_1 * term_bound.saturating_sub(1);
    let delta2 = n_minus_1 * term_bound;
    let num_images = (4 * delta1 + 1).max(delta1 + delta2 + 1);
    (delta1, delta2, num_images)
}

impl BaseParams {
    pub fn new(arity: usize, term_bound: u64, degree_bound: u64) -> Self {
        assert!(arity >= 1, "at least one variable");
        let (delta1, delta2, num_images) = thresholds(arity, term_bound);
        let prime = next_prime_geq((arity as u64).max(num_images).max(degree_bound));
        BaseParams {
            arity,
            term_bound,
            degree_bound,
            delta1,
            delta2,
            num_images,
            prime,
        }
    }

    /// Recomputes the `T`-dependent thresholds after terms were recovered;
    /// the prime stays fixed.
    pub fn shrink_term_bound(&mut self, term_bound: u64) {
        self.term_bound = term_bound;
        let (delta1, delta2, num_images) = thresholds(self.arity, term_bound);
        self.delta1 = delta1;
        self.delta2 = delta2;
        self.num_images = num_images;
    }
}

/// Smallest index (1-based) whose reduced image has maximal term count.
pub fn select_ok_degree(reduced: &[UniPoly]) -> usize {
    assert!(!reduced.is_empty());
    let mut best = 0usize;
    for (i, image) in reduced.iter().enumerate() {
        if image.num_terms() > reduced[best].num_terms() {
            best = i;
        }
    }
    best + 1
}

/// Reduced single-term image of a candidate under `(d, p)`:
/// `(exponent mod p, coefficient)`.
fn reduced_term_image(
    coeff: &BigInt,
    exponents: &ExponentVector,
    arity: usize,
    d: u64,
    p: u64,
) -> (BigUint, BigInt) {
    let spec = SubstitutionSpec::new(arity, d, p);
    let image = spec.image_exponent(exponents.exponents()) % BigUint::from(p);
    (image, coeff.clone())
}

/// How many of the supplied reduced images lose a term when the candidate's
/// image is subtracted. `reduced[i]` corresponds to base `d = i + 1`.
pub fn term_test_base_count(
    coeff: &BigInt,
    exponents: &ExponentVector,
    reduced: &[UniPoly],
    p: u64,
) -> u64 {
    let arity = exponents.arity();
    let mut count = 0;
    for (i, image) in reduced.iter().enumerate() {
        let d = i as u64 + 1;
        let (residue, c) = reduced_term_image(coeff, exponents, arity, d, p);
        // Subtracting c*x^residue shrinks the term count exactly when the
        // image carries that very coefficient there.
        if image.coefficient(&residue) == Some(&c) {
            count += 1;
        }
    }
    count
}

/// Membership test: the candidate belongs to the target polynomial iff at
/// least `delta2 + 1` of the first `delta1 + delta2 + 1` bases show a
/// term-count decrease. `reduced` must be sliced to exactly that window.
pub fn term_test_base(
    coeff: &BigInt,
    exponents: &ExponentVector,
    reduced: &[UniPoly],
    p: u64,
    delta2: u64,
) -> bool {
    term_test_base_count(coeff, exponents, reduced, p) > delta2
}

pub(crate) fn tracked_interpolate(
    bb: &BlackBox,
    spec: &SubstitutionSpec,
    degree_bound: u64,
    term_bound: u64,
    backend: Backend,
    calls: &mut Vec<UnivarCallStats>,
) -> Result<UniPoly> {
    let before = bb.probes();
    let image = interpolate_image(bb, spec, degree_bound, term_bound, backend)?;
    calls.push(UnivarCallStats {
        base: spec.base(),
        prime: spec.modulus(),
        shift: spec.shift(),
        degree_bound,
        term_bound,
        probes: bb.probes() - before,
    });
    Ok(image)
}

/// Failures that can only arise from lying input bounds — a backend whose
/// structural assumptions broke (term bound too small) or images that no
/// longer reduce consistently (degree bound too small) — are reported as
/// violated bounds.
pub(crate) fn promote_backend_failure(e: Error) -> Error {
    match e {
        Error::BackendFailure(msg) | Error::PreconditionViolated(msg) => {
            Error::BoundsViolated(msg)
        }
        other => other,
    }
}

pub(crate) fn checked_image_bound(degree_bound: u64, prime: u64, shifted: bool) -> Result<u64> {
    let overflow =
        || Error::BoundsViolated("image degree bound overflows a machine word".into());
    let unshifted = degree_bound.checked_mul(prime - 1).ok_or_else(overflow)?;
    if !shifted {
        return Ok(unshifted);
    }
    // The shifted coordinate's weight reaches 2p - 1, so the worst shifted
    // image degree is max(2D(p-1), (D-1)(2p-1)). The first form dominates
    // for p >= (D+1)/2 — always, in the base-changing driver, where p >= D —
    // and the second covers the small primes of the modulus-changing driver.
    let doubled = unshifted.checked_mul(2).ok_or_else(overflow)?;
    let small_prime = (degree_bound - 1)
        .checked_mul(2 * prime - 1)
        .ok_or_else(overflow)?;
    Ok(doubled.max(small_prime))
}

/// Interpolates the black box exactly, given `term_bound >= #f` and
/// `degree_bound > deg f`.
pub fn interpolate_base(
    bb: &BlackBox,
    arity: usize,
    term_bound: u64,
    degree_bound: u64,
    backend: Backend,
) -> Result<InterpolationReport> {
    if arity != bb.arity() {
        return Err(Error::ArityMismatch {
            expected: bb.arity(),
            got: arity,
        });
    }
    if arity == 0 || degree_bound == 0 {
        return Err(Error::BoundsViolated(
            "need at least one variable and a positive degree bound".into(),
        ));
    }
    let ring = bb.ring().clone();
    let mut params = BaseParams::new(arity, term_bound, degree_bound);
    let p = params.prime;
    let unshifted_bound = checked_image_bound(degree_bound, p, false)?;
    let shifted_bound = checked_image_bound(degree_bound, p, true)?;
    crate::univar::ensure_ring_capacity(&ring, backend, shifted_bound)?;

    let probes_start = bb.probes();
    let mut calls: Vec<UnivarCallStats> = Vec::new();
    let initial_images = usize::try_from(params.num_images).expect("image count fits usize");

    let mut images: Vec<UniPoly> = Vec::with_capacity(initial_images);
    let mut reduced: Vec<UniPoly> = Vec::with_capacity(initial_images);
    for d in 1..=initial_images as u64 {
        let spec = SubstitutionSpec::new(arity, d, p);
        let image =
            tracked_interpolate(bb, &spec, unshifted_bound, term_bound, backend, &mut calls)
                .map_err(promote_backend_failure)?;
        reduced.push(image.mod_cyclic(p));
        images.push(image);
    }

    let mut recovered = SparsePoly::zero(ring.clone(), arity);
    let mut remaining = term_bound;
    let mut rounds: Vec<RoundStats> = Vec::new();
    let round_guard = ceil_log2(term_bound.max(1)) + 2;

    loop {
        let window = usize::try_from(params.num_images).expect("fits usize");
        let d0 = select_ok_degree(&reduced[..window]);
        let alpha = reduced[d0 - 1].num_terms() as u64;
        if alpha == 0 {
            break;
        }
        if rounds.len() as u64 >= round_guard {
            return Err(Error::BoundsViolated(format!(
                "no convergence after {round_guard} rounds; term or degree bound too small"
            )));
        }

        // Shifted images of the full oracle polynomial, minus the symbolic
        // images of what is already recovered.
        let mut shifted: Vec<UniPoly> = Vec::with_capacity(arity);
        for k in 0..arity {
            let spec = SubstitutionSpec::shifted(arity, d0 as u64, p, k);
            let full =
                tracked_interpolate(bb, &spec, shifted_bound, term_bound, backend, &mut calls)
                    .map_err(promote_backend_failure)?;
            let already = substitute_sparse(&recovered, &spec)?;
            shifted.push(full.sub(&already)?);
        }

        let extraction = ts_terms(
            &reduced[d0 - 1],
            &images[d0 - 1],
            &shifted,
            d0 as u64,
            p,
            degree_bound,
        )
        .map_err(promote_backend_failure)?;
        let mut candidates = extraction.candidates;
        candidates.sort_by(|a, b| a.1.cmp(&b.1));
        candidates.dedup_by(|a, b| a.1 == b.1);

        let test_window = usize::try_from(params.delta1 + params.delta2 + 1).expect("fits usize");
        let mut accepted = SparsePoly::zero(ring.clone(), arity);
        for (coeff, exponents) in &candidates {
            if term_test_base(coeff, exponents, &reduced[..test_window], p, params.delta2) {
                accepted = accepted.add(&SparsePoly::term(
                    ring.clone(),
                    exponents.clone(),
                    coeff.clone(),
                ))?;
            }
        }

        rounds.push(RoundStats {
            round: rounds.len() as u32 + 1,
            alpha,
            selected_index: d0 as u64,
            selected_prime: p,
            candidates: candidates.len() as u64,
            accepted: accepted.num_terms() as u64,
            recovered: accepted.to_string(),
        });

        if accepted.is_zero() {
            // No progress; the round guard above will end the run.
            continue;
        }

        recovered = recovered.add(&accepted)?;
        remaining = remaining.saturating_sub(accepted.num_terms() as u64);
        params.shrink_term_bound(remaining);

        let new_window = usize::try_from(params.num_images)
            .expect("fits usize")
            .min(initial_images);
        for d in 1..=new_window as u64 {
            let spec = SubstitutionSpec::new(arity, d, p);
            let image = substitute_sparse(&accepted, &spec)?;
            let index = (d - 1) as usize;
            images[index] = images[index].sub(&image)?;
            reduced[index] = reduced[index].sub(&image.mod_cyclic(p))?;
        }
    }

    Ok(InterpolationReport {
        spec_version: REPORT_SPEC_VERSION,
        algorithm: Algorithm::Base,
        backend,
        ring: ring.to_string(),
        arity,
        term_bound,
        degree_bound,
        poly: recovered,
        probes: bb.probes() - probes_start,
        univariate_interpolations: calls.len() as u64,
        rounds,
        univariate_calls: calls,
        wall_ms: None,
    })
}
