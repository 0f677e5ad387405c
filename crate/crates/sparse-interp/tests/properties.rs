//! Cross-module property tests: the invariants that tie the substitution,
//! extraction, and interpolation layers together, under proptest shrinking.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use sparse_interp::poly::{ExponentVector, SparsePoly, UniPoly};
use sparse_interp::verify;
use sparse_interp::{
    interpolate_base, interpolate_mod, substitute_sparse, ts_terms, Backend, BlackBox, Ring,
    SubstitutionSpec,
};

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::integers()),
        Just(Ring::prime_field(13).unwrap()),
        Just(Ring::prime_field(101).unwrap()),
    ]
}

/// A sparse polynomial with its arity, at most 6 terms, degree below 6.
fn poly_strategy() -> impl Strategy<Value = SparsePoly> {
    (1usize..5, ring_strategy())
        .prop_flat_map(|(arity, ring)| {
            let term = (
                proptest::collection::vec(0u64..6, arity),
                -9i64..=9,
            );
            proptest::collection::vec(term, 0..6).prop_map(move |terms| {
                SparsePoly::from_terms(
                    ring.clone(),
                    arity,
                    terms.into_iter().filter(|(ev, _)| ev.iter().sum::<u64>() < 6).map(
                        |(ev, c)| (ExponentVector::from_u64s(&ev), BigInt::from(c)),
                    ),
                )
                .expect("arity consistent")
            })
        })
}

fn unipoly_strategy() -> impl Strategy<Value = UniPoly> {
    (ring_strategy(), proptest::collection::vec((0u64..60, -9i64..=9), 0..7)).prop_map(
        |(ring, terms)| {
            UniPoly::from_terms(
                ring,
                terms
                    .into_iter()
                    .map(|(e, c)| (BigUint::from(e), BigInt::from(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_format_round_trips(f in poly_strategy()) {
        let text = f.to_string();
        let back = SparsePoly::parse(&text, f.ring(), f.arity()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn mod_cyclic_idempotent(f in unipoly_strategy(), p in 1u64..50) {
        let once = f.mod_cyclic(p);
        prop_assert_eq!(once.mod_cyclic(p), once);
    }

    #[test]
    fn add_sub_round_trip(f in poly_strategy(), seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = sparse_interp::gen::random_sparse(&mut rng, f.ring(), f.arity(), 3, 6);
        prop_assert_eq!(f.add(&g).unwrap().sub(&g).unwrap(), f);
    }

    /// All substitutions of one (d, p) family agree after cyclic reduction,
    /// shifted or not.
    #[test]
    fn shifted_and_unshifted_images_reduce_identically(
        f in poly_strategy(),
        d in 1u64..10,
        p_seed in 2u64..14,
    ) {
        let arity = f.arity();
        let p = sparse_interp::primes::next_prime_geq(p_seed);
        let base = substitute_sparse(&f, &SubstitutionSpec::new(arity, d, p))
            .unwrap()
            .mod_cyclic(p);
        for k in 0..arity {
            let spec = SubstitutionSpec::shifted(arity, d, p, k);
            prop_assert_eq!(substitute_sparse(&f, &spec).unwrap().mod_cyclic(p), base.clone());
        }
    }

    /// Candidate extraction keeps every non-colliding term and only ever
    /// emits candidates matching a reduced-image term.
    #[test]
    fn extraction_sound_and_complete(
        f in poly_strategy(),
        d in 1u64..10,
        p_seed in 2u64..14,
    ) {
        let arity = f.arity();
        let p = sparse_interp::primes::next_prime_geq(p_seed);
        let deg_bound = 6u64;
        let spec = SubstitutionSpec::new(arity, d, p);
        let f_dp = substitute_sparse(&f, &spec).unwrap();
        let fmod = f_dp.mod_cyclic(p);
        let shifted: Vec<UniPoly> = (0..arity)
            .map(|k| substitute_sparse(&f, &SubstitutionSpec::shifted(arity, d, p, k)).unwrap())
            .collect();
        let set = ts_terms(&fmod, &f_dp, &shifted, d, p, deg_bound).unwrap();
        prop_assert!(set.candidates.len() <= fmod.num_terms());

        let census = verify::collision_report(&f, d, p);
        for (idx, (ev, c)) in f.terms().enumerate() {
            if !census.colliding[idx] {
                prop_assert!(set.candidates.iter().any(|(cc, cev)| cc == c && cev == ev));
            }
        }
        for (c, ev) in &set.candidates {
            let u = SparsePoly::term(f.ring().clone(), ev.clone(), c.clone());
            let u_mod = substitute_sparse(&u, &spec).unwrap().mod_cyclic(p);
            let (e, cc) = u_mod.terms().next().unwrap();
            prop_assert_eq!(fmod.coefficient(e), Some(cc));
        }
    }
}

proptest! {
    // End-to-end runs are heavier; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn drivers_recover_random_instances(
        seed in 0u64..10_000,
        use_base in any::<bool>(),
        use_bot in any::<bool>(),
        over_int in any::<bool>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let arity = rng.gen_range(1..4usize);
        let deg_bound = rng.gen_range(1..5u64);
        let terms = sparse_interp::gen::monomials_below(arity, deg_bound).min(4);
        let ring = if over_int {
            Ring::integers()
        } else {
            Ring::prime_field(sparse_interp::suites::smallest_admissible_prime(
                arity, terms, deg_bound,
            ))
            .unwrap()
        };
        let f = sparse_interp::gen::random_sparse(&mut rng, &ring, arity, terms, deg_bound);
        let backend = if use_bot { Backend::BenOrTiwari } else { Backend::Lagrange };
        let bb = BlackBox::from_sparse(f.clone());
        let report = if use_base {
            interpolate_base(&bb, arity, terms, deg_bound, backend).unwrap()
        } else {
            interpolate_mod(&bb, arity, terms, deg_bound, backend).unwrap()
        };
        prop_assert_eq!(report.poly, f);
        // Probe accounting: totals match the per-call contracts.
        let per_call: u64 = report.univariate_calls.iter().map(|c| c.probes).sum();
        prop_assert_eq!(report.probes, per_call);
        for call in &report.univariate_calls {
            match backend {
                Backend::Lagrange => prop_assert_eq!(call.probes, call.degree_bound + 1),
                Backend::BenOrTiwari => prop_assert_eq!(call.probes, 2 * call.term_bound),
            }
        }
    }
}
