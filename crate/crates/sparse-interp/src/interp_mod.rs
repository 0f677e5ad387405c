//! Multivariate interpolation by modulus-changing substitutions.
//!
//! The substitution base is pinned at the degree bound `D`; what varies is
//! the prime modulus, ranging over the first primes. Structure mirrors
//! [`crate::interp_base`] with `(d, p)` replaced by `(D, p_j)`:
//!
//! * `N1`, `N2`, `N3` are the smallest counts whose prime products reach
//!   `D^(n(T-1))`, `D^(nT)` and `D^(4n(T-1))`, decided by exact products;
//! * the ok prime is the `p_j`, `j <= N3`, maximizing the reduced image term
//!   count — at least half the remaining terms are collision-free there;
//! * a candidate belongs to the target iff at least `N2` of the first
//!   `N1 + N2 - 1` primes show a term-count decrease after subtraction.
//!
//! Unlike the base-changing driver every cached image lives under its own
//! modulus `p_j`, so reductions and subtractions are keyed per index. The
//! prime pool (`K` primes, `K >= N` always) is fixed at the start; the
//! working window shrinks with the term bound.

use num_bigint::{BigInt, BigUint};

use crate::blackbox::BlackBox;
use crate::interp_base::{
    checked_image_bound, promote_backend_failure, tracked_interpolate,
};
use crate::kronecker::{substitute_sparse, SubstitutionSpec};
use crate::poly::{ExponentVector, SparsePoly, UniPoly};
use crate::primes::{first_primes, smallest_count_with_product_geq};
use crate::report::{
    Algorithm, InterpolationReport, RoundStats, UnivarCallStats, REPORT_SPEC_VERSION,
};
use crate::tsterms::ts_terms;
use crate::univar::Backend;
use crate::{ceil_log2, Error, Result};

/// Thresholds of the modulus-changing reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModParams {
    pub arity: usize,
    pub term_bound: u64,
    pub degree_bound: u64,
    /// Smallest `N1` with `p_1 ... p_N1 >= D^(n(T-1))`.
    pub n1: u64,
    /// Smallest `N2` with `p_1 ... p_N2 >= D^(nT)`.
    pub n2: u64,
    /// Smallest `N3` with `p_1 ... p_N3 >= D^(4n(T-1))`.
    pub n3: u64,
    /// Working window `N = max(N1 + N2 - 1, N3)`.
    pub num_images: u64,
    /// Prime budget `K`; always at least `N`.
    pub prime_budget: u64,
    /// The first `K` primes.
    pub primes: Vec<u64>,
}

/// Exact `ceil(a * log2(D))`, i.e. the bit length of `D^a - 1`.
fn ceil_log2_pow(base: u64, exponent: u64) -> u64 {
    if exponent == 0 || base <= 1 {
        return 0;
    }
    let power = BigUint::from(base).pow(u32::try_from(exponent).expect("desk-scale exponent"));
    (power - 1u32).bits()
}

fn product_counts(arity: usize, term_bound: u64, degree_bound: u64) -> (u64, u64, u64, u64) {
    let n = arity as u64;
    let d = BigUint::from(degree_bound);
    let exp1 = u32::try_from(n * term_bound.saturating_sub(1)).expect("desk-scale exponent");
    let exp2 = u32::try_from(n * term_bound).expect("desk-scale exponent");
    let exp3 = u32::try_from(4 * n * term_bound.saturating_sub(1)).expect("desk-scale exponent");
    let n1 = smallest_count_with_product_geq(&d.pow(exp1)) as u64;
    let n2 = smallest_count_with_product_geq(&d.pow(exp2)) as u64;
    let n3 = smallest_count_with_product_geq(&d.pow(exp3)) as u64;
    let num_images = (n1 + n2 - 1).max(n3);
    (n1, n2, n3, num_images)
}

/// Computes all thresholds and the prime pool for given bounds.
pub fn compute_mod_params(arity: usize, term_bound: u64, degree_bound: u64) -> ModParams {
    assert!(arity >= 1, "at least one variable");
    assert!(degree_bound >= 1, "positive degree bound");
    let n = arity as u64;
    let (n1, n2, n3, num_images) = product_counts(arity, term_bound, degree_bound);
    let cl_tm1 = ceil_log2_pow(degree_bound, n * term_bound.saturating_sub(1));
    let cl_t = ceil_log2_pow(degree_bound, n * term_bound);
    let prime_budget = 4u64.max(cl_tm1 + cl_t).max(4 * cl_t);
    // The budget always covers the working window (each prime is at least 2,
    // so N1 <= ceil(n(T-1) log2 D) and likewise for the others).
    assert!(
        prime_budget >= num_images,
        "prime budget K = {prime_budget} below window N = {num_images}"
    );
    let primes = first_primes(usize::try_from(prime_budget).expect("fits usize"));
    ModParams {
        arity,
        term_bound,
        degree_bound,
        n1,
        n2,
        n3,
        num_images,
        prime_budget,
        primes,
    }
}

impl ModParams {
    /// Recomputes the `T`-dependent counts; the prime pool stays fixed.
    pub fn shrink_term_bound(&mut self, term_bound: u64) {
        self.term_bound = term_bound;
        let (n1, n2, n3, num_images) = product_counts(self.arity, term_bound, self.degree_bound);
        self.n1 = n1;
        self.n2 = n2;
        self.n3 = n3;
        self.num_images = num_images;
    }
}

/// Smallest index (1-based) whose reduced image has maximal term count; the
/// corresponding prime is an "ok" prime when the slice covers `1..=N3`.
pub fn select_ok_prime(reduced: &[UniPoly]) -> usize {
    assert!(!reduced.is_empty());
    let mut best = 0usize;
    for (i, image) in reduced.iter().enumerate() {
        if image.num_terms() > reduced[best].num_terms() {
            best = i;
        }
    }
    best + 1
}

/// How many of the reduced images (under their own primes) lose a term when
/// the candidate's image is subtracted. `reduced[j]` pairs with `primes[j]`.
pub fn term_test_mod_count(
    coeff: &BigInt,
    exponents: &ExponentVector,
    reduced: &[UniPoly],
    primes: &[u64],
    base: u64,
) -> u64 {
    let arity = exponents.arity();
    let mut count = 0;
    for (image, &p) in reduced.iter().zip(primes) {
        let spec = SubstitutionSpec::new(arity, base, p);
        let residue = spec.image_exponent(exponents.exponents()) % BigUint::from(p);
        if image.coefficient(&residue) == Some(&ring_candidate(image, coeff)) {
            count += 1;
        }
    }
    count
}

fn ring_candidate(image: &UniPoly, coeff: &BigInt) -> BigInt {
    image.ring().normalize(coeff.clone())
}

/// Membership test: at least `n2` of the first `n1 + n2 - 1` primes must show
/// a decrease. `reduced`/`primes` must be sliced to that window.
pub fn term_test_mod(
    coeff: &BigInt,
    exponents: &ExponentVector,
    reduced: &[UniPoly],
    primes: &[u64],
    base: u64,
    n2: u64,
) -> bool {
    term_test_mod_count(coeff, exponents, reduced, primes, base) >= n2
}

/// Interpolates the black box exactly, given `term_bound >= #f` and
/// `degree_bound > deg f`.
pub fn interpolate_mod(
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
    let mut params = compute_mod_params(arity, term_bound, degree_bound);
    let initial_images = usize::try_from(params.num_images).expect("fits usize");
    let largest_prime = params.primes[initial_images - 1];
    crate::univar::ensure_ring_capacity(
        &ring,
        backend,
        checked_image_bound(degree_bound, largest_prime, true)?,
    )?;

    let probes_start = bb.probes();
    let mut calls: Vec<UnivarCallStats> = Vec::new();

    let mut images: Vec<UniPoly> = Vec::with_capacity(initial_images);
    let mut reduced: Vec<UniPoly> = Vec::with_capacity(initial_images);
    for j in 0..initial_images {
        let p = params.primes[j];
        let spec = SubstitutionSpec::new(arity, degree_bound, p);
        let bound = checked_image_bound(degree_bound, p, false)?;
        let image = tracked_interpolate(bb, &spec, bound, term_bound, backend, &mut calls)
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
        let j0 = select_ok_prime(&reduced[..window]);
        let alpha = reduced[j0 - 1].num_terms() as u64;
        if alpha == 0 {
            break;
        }
        if rounds.len() as u64 >= round_guard {
            return Err(Error::BoundsViolated(format!(
                "no convergence after {round_guard} rounds; term or degree bound too small"
            )));
        }
        let p0 = params.primes[j0 - 1];

        let mut shifted: Vec<UniPoly> = Vec::with_capacity(arity);
        let shifted_bound = checked_image_bound(degree_bound, p0, true)?;
        for k in 0..arity {
            let spec = SubstitutionSpec::shifted(arity, degree_bound, p0, k);
            let full =
                tracked_interpolate(bb, &spec, shifted_bound, term_bound, backend, &mut calls)
                    .map_err(promote_backend_failure)?;
            let already = substitute_sparse(&recovered, &spec)?;
            shifted.push(full.sub(&already)?);
        }

        let extraction = ts_terms(
            &reduced[j0 - 1],
            &images[j0 - 1],
            &shifted,
            degree_bound,
            p0,
            degree_bound,
        )
        .map_err(promote_backend_failure)?;
        let mut candidates = extraction.candidates;
        candidates.sort_by(|a, b| a.1.cmp(&b.1));
        candidates.dedup_by(|a, b| a.1 == b.1);

        let test_window = usize::try_from(params.n1 + params.n2 - 1).expect("fits usize");
        let mut accepted = SparsePoly::zero(ring.clone(), arity);
        for (coeff, exponents) in &candidates {
            if term_test_mod(
                coeff,
                exponents,
                &reduced[..test_window],
                &params.primes[..test_window],
                degree_bound,
                params.n2,
            ) {
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
            selected_index: j0 as u64,
            selected_prime: p0,
            candidates: candidates.len() as u64,
            accepted: accepted.num_terms() as u64,
            recovered: accepted.to_string(),
        });

        if accepted.is_zero() {
            continue;
        }

        recovered = recovered.add(&accepted)?;
        remaining = remaining.saturating_sub(accepted.num_terms() as u64);
        params.shrink_term_bound(remaining);

        let new_window = usize::try_from(params.num_images)
            .expect("fits usize")
            .min(initial_images);
        for (j, p) in params.primes[..new_window].iter().enumerate() {
            let spec = SubstitutionSpec::new(arity, degree_bound, *p);
            let image = substitute_sparse(&accepted, &spec)?;
            images[j] = images[j].sub(&image)?;
            reduced[j] = reduced[j].sub(&image.mod_cyclic(*p))?;
        }
    }

    Ok(InterpolationReport {
        spec_version: REPORT_SPEC_VERSION,
        algorithm: Algorithm::Modulus,
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::interp_base::interpolate_base;
    use rand::{Rng, SeedableRng};

    fn zz() -> Ring {
        Ring::integers()
    }

    fn sp(text: &str, ring: &Ring, arity: usize) -> SparsePoly {
        SparsePoly::parse(text, ring, arity).unwrap()
    }

    fn reduced_images(f: &SparsePoly, base: u64, primes: &[u64]) -> Vec<UniPoly> {
        primes
            .iter()
            .map(|&p| {
                substitute_sparse(f, &SubstitutionSpec::new(f.arity(), base, p))
                    .unwrap()
                    .mod_cyclic(p)
            })
            .collect()
    }

    #[test]
    fn params_examples() {
        // Worked instance: products 2*3 >= 4, 2*3*5 >= 16, up to 2310 >= 256.
        let p = compute_mod_params(2, 2, 2);
        assert_eq!((p.n1, p.n2, p.n3), (2, 3, 5));
        assert_eq!(p.num_images, 5);
        assert_eq!(p.prime_budget, 16);
        assert_eq!(p.primes.len(), 16);
        // Degenerate.
        let p = compute_mod_params(1, 1, 2);
        assert_eq!((p.n1, p.n2, p.n3, p.num_images), (1, 1, 1, 1));
        assert_eq!(p.prime_budget, 4);
        // 3^4 = 81, 3^6 = 729, 3^16 = 43046721.
        let p = compute_mod_params(2, 3, 3);
        assert_eq!((p.n1, p.n2, p.n3), (4, 5, 9));
        assert_eq!(p.num_images, 9);
    }

    #[test]
    fn budget_covers_window_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for _ in 0..200 {
            let arity = rng.gen_range(1..6usize);
            let t = rng.gen_range(0..9u64);
            let d = rng.gen_range(1..12u64);
            // The constructor asserts K >= N internally.
            let p = compute_mod_params(arity, t, d);
            assert!(p.prime_budget >= p.num_images);
        }
    }

    #[test]
    fn select_ok_prime_examples() {
        let f = sp("x1 + x2", &zz(), 2);
        let reduced = reduced_images(&f, 2, &[2, 3, 5, 7, 11]);
        let counts: Vec<usize> = reduced.iter().map(UniPoly::num_terms).collect();
        assert_eq!(counts, vec![2, 2, 2, 2, 2]);
        assert_eq!(select_ok_prime(&reduced), 1);
        // Plain argmax with smallest-index ties.
        let lopsided = vec![
            UniPoly::from_u64_terms(zz(), &[(0, 1)]),
            UniPoly::from_u64_terms(zz(), &[(0, 1), (1, 1), (2, 1)]),
            UniPoly::from_u64_terms(zz(), &[(0, 1), (1, 1)]),
        ];
        assert_eq!(select_ok_prime(&lopsided), 2);
    }

    #[test]
    fn term_test_worked_instance() {
        let f = sp("x1 + x2", &zz(), 2);
        let params = compute_mod_params(2, 2, 2);
        let window = (params.n1 + params.n2 - 1) as usize;
        let primes = &params.primes[..window];
        let reduced = reduced_images(&f, 2, primes);

        let one = BigInt::from(1);
        let x1 = ExponentVector::from_u64s(&[1, 0]);
        // Decrease at every one of the four primes; threshold N2 = 3.
        assert_eq!(term_test_mod_count(&one, &x1, &reduced, primes, 2), 4);
        assert!(term_test_mod(&one, &x1, &reduced, primes, 2, params.n2));
        // Wrong coefficient never removes a term.
        let two = BigInt::from(2);
        let x2 = ExponentVector::from_u64s(&[0, 1]);
        assert_eq!(term_test_mod_count(&two, &x2, &reduced, primes, 2), 0);
        assert!(!term_test_mod(&two, &x2, &reduced, primes, 2, params.n2));
        // A single-term polynomial loses its term at every prime.
        let single = sp("7*x1^2*x2", &zz(), 2);
        let sr = reduced_images(&single, 4, primes);
        let seven = BigInt::from(7);
        let m = ExponentVector::from_u64s(&[2, 1]);
        assert_eq!(
            term_test_mod_count(&seven, &m, &sr, primes, 4),
            window as u64
        );
    }

    #[test]
    fn term_test_iff_membership_exhaustive() {
        // Fixed f over F_7 with n = 2, D = 3: membership of every candidate
        // monomial of degree < 3 with coefficient in {1, 2}.
        let ring = Ring::prime_field(7).unwrap();
        let f = sp("x1^2 + 2*x2", &ring, 2);
        let params = compute_mod_params(2, 2, 3);
        assert_eq!((params.n1, params.n2), (3, 4));
        let window = (params.n1 + params.n2 - 1) as usize;
        let primes = &params.primes[..window];
        let reduced = reduced_images(&f, 3, primes);
        for e1 in 0..3u64 {
            for e2 in 0..3u64 {
                if e1 + e2 >= 3 {
                    continue;
                }
                for c in 1..=2i64 {
                    let ev = ExponentVector::from_u64s(&[e1, e2]);
                    let coeff = BigInt::from(c);
                    let is_member = f.coefficient(&ev) == Some(&coeff);
                    let passes = term_test_mod(&coeff, &ev, &reduced, primes, 3, params.n2);
                    assert_eq!(passes, is_member, "c={c} e=({e1},{e2})");
                }
            }
        }
    }

    #[test]
    fn collision_primes_bounded_per_term() {
        // Each term collides at no more than N1 - 1 of the first
        // N1 + N2 - 1 primes.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for _ in 0..100 {
            let arity = rng.gen_range(1..4usize);
            let deg = rng.gen_range(1..5u64);
            let num_terms = crate::gen::monomials_below(arity, deg).min(5);
            let f = crate::gen::random_sparse(&mut rng, &zz(), arity, num_terms, deg);
            let t = f.num_terms() as u64;
            let params = compute_mod_params(arity, t, deg);
            let window = (params.n1 + params.n2 - 1) as usize;
            for idx in 0..t as usize {
                let colliding_primes = params.primes[..window]
                    .iter()
                    .filter(|&&p| crate::verify::collision_report(&f, deg, p).colliding[idx])
                    .count() as u64;
                assert!(
                    colliding_primes <= params.n1 - 1,
                    "f={f} idx={idx} window={window}"
                );
            }
        }
    }

    #[test]
    fn worked_instance_full_run() {
        let f = sp("x1 + x2", &zz(), 2);
        for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
            let bb = BlackBox::from_sparse(f.clone());
            let report = interpolate_mod(&bb, 2, 2, 2, backend).unwrap();
            assert_eq!(report.poly, f);
            assert_eq!(report.rounds.len(), 1);
            let round = &report.rounds[0];
            assert_eq!(round.alpha, 2);
            assert_eq!(round.selected_index, 1);
            assert_eq!(round.selected_prime, 2);
            assert_eq!(round.candidates, 2);
            assert_eq!(round.accepted, 2);
            assert_eq!(report.univariate_interpolations, 7);
            let expected: u64 = report.univariate_calls.iter().map(|c| c.probes).sum();
            assert_eq!(report.probes, expected);
            match backend {
                // Image degree bounds D*(p_j - 1) + 1 points for j = 1..5,
                // then two shifted interpolations at p = 2.
                Backend::Lagrange => {
                    assert_eq!(report.probes, (3 + 5 + 9 + 13 + 21) + 2 * 5)
                }
                Backend::BenOrTiwari => assert_eq!(report.probes, 7 * 4),
            }
        }
    }

    #[test]
    fn zero_polynomial() {
        let bb = BlackBox::from_sparse(SparsePoly::zero(zz(), 2));
        let report = interpolate_mod(&bb, 2, 2, 2, Backend::BenOrTiwari).unwrap();
        assert!(report.poly.is_zero());
        assert!(report.rounds.is_empty());
        assert_eq!(report.univariate_interpolations, 5);
        assert_eq!(report.probes, 5 * 4);
    }

    #[test]
    fn agrees_with_base_changing_driver() {
        let f = sp("5*x1^2*x2 + x3", &zz(), 3);
        let bb1 = BlackBox::from_sparse(f.clone());
        let from_mod = interpolate_mod(&bb1, 3, 2, 4, Backend::BenOrTiwari).unwrap();
        let bb2 = BlackBox::from_sparse(f.clone());
        let from_base = interpolate_base(&bb2, 3, 2, 4, Backend::BenOrTiwari).unwrap();
        assert_eq!(from_mod.poly, f);
        assert_eq!(from_base.poly, from_mod.poly);
    }

    #[test]
    fn random_instances_recover_exactly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(89);
        for _ in 0..15 {
            let arity = rng.gen_range(1..4usize);
            let deg_bound = rng.gen_range(1..5u64);
            let num_terms = crate::gen::monomials_below(arity, deg_bound).min(4);
            let params = compute_mod_params(arity, num_terms, deg_bound);
            let p_max = params.primes[params.num_images as usize - 1];
            let q = crate::primes::next_prime_geq(2 * deg_bound * (p_max - 1) + 2);
            for ring in [zz(), Ring::prime_field(q).unwrap()] {
                let f = crate::gen::random_sparse(&mut rng, &ring, arity, num_terms, deg_bound);
                for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
                    let bb = BlackBox::from_sparse(f.clone());
                    let report =
                        interpolate_mod(&bb, arity, num_terms, deg_bound, backend).unwrap();
                    assert_eq!(report.poly, f, "ring={ring} backend={backend}");
                }
            }
        }
    }

    #[test]
    fn degree_bound_too_small_is_detected() {
        let f = sp("x1^3 + x1 + 1", &zz(), 1);
        let bb = BlackBox::from_sparse(f);
        assert!(matches!(
            interpolate_mod(&bb, 1, 3, 3, Backend::Lagrange),
            Err(Error::BoundsViolated(_))
        ));
    }
}
