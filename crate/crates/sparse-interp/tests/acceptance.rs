//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 1, 3, 4, and 6 share a seeded randomized suite of interpolation
//! runs, built once; the remaining criteria use dedicated fixtures. Run with
//! `cargo test -p sparse-interp --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::sync::LazyLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sparse_interp::gen;
use sparse_interp::interp_base::{term_test_base, BaseParams};
use sparse_interp::interp_mod::{compute_mod_params, term_test_mod};
use sparse_interp::poly::{ExponentVector, SparsePoly, UniPoly};
use sparse_interp::report::{Algorithm, InterpolationReport};
use sparse_interp::suites::smallest_admissible_prime;
use sparse_interp::verify;
use sparse_interp::{
    interpolate_base, interpolate_mod, parse_expr, substitute_sparse, Backend, BlackBox, Error,
    Ring, SubstitutionSpec,
};

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}

struct Run {
    algorithm: Algorithm,
    backend: Backend,
    report: InterpolationReport,
}

struct Case {
    f: SparsePoly,
    arity: usize,
    terms: u64,
    deg_bound: u64,
    runs: Vec<Run>,
}

/// Smallest degree bound leaving room for `terms` distinct monomials.
fn min_deg_bound(arity: usize, terms: u64) -> u64 {
    let mut d = 1;
    while gen::monomials_below(arity, d) < terms {
        d += 1;
    }
    d
}

/// Per-cell instance count and degree cap for integer-ring instances. Exact
/// big-integer arithmetic is the expensive corner — probe values reach
/// thousands of bits — so the heaviest parameter products run fewer
/// instances at the smallest feasible degrees and the largest cells are
/// covered by the prime-field side; the full degree range is spanned by the
/// cheap cells.
fn zz_budget(arity: usize, terms: u64) -> (u64, u64) {
    match arity as u64 * terms {
        0..=8 => (9, 9),
        9..=16 => (8, 5),
        17..=24 => (4, 3),
        _ => (2, 3),
    }
}

/// Degree cap for prime-field instances (cheap modular arithmetic; only the
/// very largest parameter products are trimmed).
fn fq_deg_cap(arity: usize, terms: u64) -> u64 {
    match arity as u64 * terms {
        0..=16 => 9,
        17..=24 => 7,
        _ => 5,
    }
}

fn run_all(f: &SparsePoly, arity: usize, terms: u64, deg_bound: u64) -> Vec<Run> {
    let mut runs = Vec::with_capacity(4);
    for algorithm in [Algorithm::Base, Algorithm::Modulus] {
        for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
            let bb = BlackBox::from_sparse(f.clone());
            let report = match algorithm {
                Algorithm::Base => interpolate_base(&bb, arity, terms, deg_bound, backend),
                Algorithm::Modulus => interpolate_mod(&bb, arity, terms, deg_bound, backend),
            }
            .unwrap_or_else(|e| {
                panic!("driver failed: f={f} alg={algorithm} backend={backend} T={terms} D={deg_bound}: {e}")
            });
            runs.push(Run {
                algorithm,
                backend,
                report,
            });
        }
    }
    runs
}

fn build_suite() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5);
    let mut cases = Vec::new();
    for arity in 1..=4usize {
        for terms in 1..=8u64 {
            let dmin = min_deg_bound(arity, terms);
            for _ in 0..9 {
                let dmax = fq_deg_cap(arity, terms).max(dmin);
                let deg_bound = rng.gen_range(dmin..=dmax);
                let q = smallest_admissible_prime(arity, terms, deg_bound);
                let ring = Ring::prime_field(q).unwrap();
                let f = gen::random_sparse(&mut rng, &ring, arity, terms, deg_bound);
                let runs = run_all(&f, arity, terms, deg_bound);
                cases.push(Case {
                    f,
                    arity,
                    terms,
                    deg_bound,
                    runs,
                });
            }
            let (count, cap) = zz_budget(arity, terms);
            for _ in 0..count {
                let dmax = cap.max(dmin);
                let deg_bound = rng.gen_range(dmin..=dmax);
                let ring = Ring::integers();
                let f = gen::random_sparse(&mut rng, &ring, arity, terms, deg_bound);
                let runs = run_all(&f, arity, terms, deg_bound);
                cases.push(Case {
                    f,
                    arity,
                    terms,
                    deg_bound,
                    runs,
                });
            }
        }
    }
    cases
}

static SUITE: LazyLock<Vec<Case>> = LazyLock::new(build_suite);

#[test]
fn criterion_1_round_trip_exactness() {
    let suite = &*SUITE;
    assert!(
        suite.len() >= 500,
        "suite has only {} instances",
        suite.len()
    );
    // The suite spans every variable count, term count, both rings, and
    // degrees up to 9.
    for arity in 1..=4usize {
        assert!(suite.iter().any(|c| c.arity == arity));
    }
    for terms in 1..=8u64 {
        assert!(suite.iter().any(|c| c.terms == terms));
    }
    assert!(suite.iter().any(|c| c.f.ring().is_field()));
    assert!(suite.iter().any(|c| !c.f.ring().is_field()));
    assert!(suite.iter().any(|c| c.deg_bound == 9));

    let mut runs = 0u64;
    for case in suite {
        for run in &case.runs {
            assert_eq!(
                run.report.poly, case.f,
                "inexact recovery: f={} alg={} backend={}",
                case.f, run.algorithm, run.backend
            );
            runs += 1;
        }
    }
    println!(
        "criterion 1 (round-trip exactness): PASS — {} instances, {} runs, all exact",
        suite.len(),
        runs
    );
}

#[test]
fn criterion_2_term_test_iff() {
    // Fixed f over F_7 with n = 2, D = 3; exhaustive over monomials of
    // degree < 3 and coefficients {1, 2}. Membership must match the test
    // verdict exactly, for both term tests.
    let ring = Ring::prime_field(7).unwrap();
    let f = SparsePoly::parse("x1^2 + 2*x2", &ring, 2).unwrap();

    let base_params = BaseParams::new(2, 2, 3);
    let base_window = base_params.delta1 + base_params.delta2 + 1;
    let base_reduced: Vec<UniPoly> = (1..=base_window)
        .map(|d| {
            substitute_sparse(&f, &SubstitutionSpec::new(2, d, base_params.prime))
                .unwrap()
                .mod_cyclic(base_params.prime)
        })
        .collect();

    let mod_params = compute_mod_params(2, 2, 3);
    let mod_window = (mod_params.n1 + mod_params.n2 - 1) as usize;
    let mod_primes = &mod_params.primes[..mod_window];
    let mod_reduced: Vec<UniPoly> = mod_primes
        .iter()
        .map(|&p| {
            substitute_sparse(&f, &SubstitutionSpec::new(2, 3, p))
                .unwrap()
                .mod_cyclic(p)
        })
        .collect();

    let mut checked = 0;
    for e1 in 0..3u64 {
        for e2 in 0..3u64 {
            if e1 + e2 >= 3 {
                continue;
            }
            for c in 1..=2i64 {
                let ev = ExponentVector::from_u64s(&[e1, e2]);
                let coeff = BigInt::from(c);
                let member = f.coefficient(&ev) == Some(&coeff);
                let base_verdict = term_test_base(
                    &coeff,
                    &ev,
                    &base_reduced,
                    base_params.prime,
                    base_params.delta2,
                );
                let mod_verdict =
                    term_test_mod(&coeff, &ev, &mod_reduced, mod_primes, 3, mod_params.n2);
                assert_eq!(base_verdict, member, "base test at c={c} e=({e1},{e2})");
                assert_eq!(mod_verdict, member, "modulus test at c={c} e=({e1},{e2})");
                checked += 1;
            }
        }
    }
    println!(
        "criterion 2 (term-test iff): PASS — {checked} candidates, both tests match membership"
    );
}

#[test]
fn criterion_3_ok_selection_half_survival() {
    let suite = &*SUITE;
    let mut rounds_checked = 0u64;
    for case in suite {
        for run in &case.runs {
            let mut remaining = case.f.clone();
            for round in &run.report.rounds {
                let base = match run.algorithm {
                    Algorithm::Base => round.selected_index,
                    Algorithm::Modulus => case.deg_bound,
                };
                assert!(
                    verify::check_half_survive(&remaining, base, round.selected_prime),
                    "round {} of f={} alg={} backend={}: fewer than half survive at ({base}, {})",
                    round.round,
                    case.f,
                    run.algorithm,
                    run.backend,
                    round.selected_prime
                );
                let accepted =
                    SparsePoly::parse(&round.recovered, case.f.ring(), case.arity).unwrap();
                // Progress: each round recovers at least half of what is left.
                assert!(
                    round.accepted >= (remaining.num_terms() as u64).div_ceil(2),
                    "round {} of f={} alg={} backend={} recovered only {} of {}",
                    round.round,
                    case.f,
                    run.algorithm,
                    run.backend,
                    round.accepted,
                    remaining.num_terms()
                );
                remaining = remaining.sub(&accepted).unwrap();
                rounds_checked += 1;
            }
            assert!(remaining.is_zero());
        }
    }
    println!(
        "criterion 3 (ok-degree/ok-prime selection): PASS — {rounds_checked} rounds, \
         at least half of the remaining terms collision-free at every selection \
         and recovered by the round"
    );
}

#[test]
fn criterion_4_collision_prime_bound() {
    let suite = &*SUITE;
    let mut terms_checked = 0u64;
    for case in suite {
        let params = compute_mod_params(case.arity, case.terms, case.deg_bound);
        let window = (params.n1 + params.n2 - 1) as usize;
        for idx in 0..case.f.num_terms() {
            let colliding = params.primes[..window]
                .iter()
                .filter(|&&p| verify::collision_report(&case.f, case.deg_bound, p).colliding[idx])
                .count() as u64;
            assert!(
                colliding <= params.n1 - 1,
                "term #{idx} of f={} collides at {colliding} primes, N1={}",
                case.f,
                params.n1
            );
            terms_checked += 1;
        }
    }
    println!(
        "criterion 4 (collision-prime bound): PASS — {terms_checked} terms, \
         all colliding at no more than N1-1 of the first N1+N2-1 primes"
    );
}

#[test]
fn criterion_5_pair_product_divisibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1745);
    let ring = Ring::integers();
    let mut checked = 0u64;
    while checked < 200 {
        let arity = rng.gen_range(1..5usize);
        let deg_bound = rng.gen_range(1..6u64);
        let terms = gen::monomials_below(arity, deg_bound).min(rng.gen_range(1..7u64));
        let f = gen::random_sparse(&mut rng, &ring, arity, terms, deg_bound);
        let p = sparse_interp::primes::first_primes(10)[rng.gen_range(0..10)];
        assert!(
            verify::divisibility_check(&f, deg_bound, p),
            "p^ceil(s/2) does not divide the pair product: f={f} D={deg_bound} p={p}"
        );
        checked += 1;
    }
    println!(
        "criterion 5 (pair-product divisibility): PASS — {checked} random (f, p) pairs"
    );
}

#[test]
fn criterion_6_probe_accounting() {
    let suite = &*SUITE;
    let mut calls_checked = 0u64;
    for case in suite {
        let base_initial = BaseParams::new(case.arity, case.terms, case.deg_bound).num_images;
        let mod_initial =
            compute_mod_params(case.arity, case.terms, case.deg_bound).num_images;
        for run in &case.runs {
            for call in &run.report.univariate_calls {
                let contract = match run.backend {
                    Backend::Lagrange => call.degree_bound + 1,
                    Backend::BenOrTiwari => 2 * call.term_bound,
                };
                assert_eq!(
                    call.probes, contract,
                    "per-call probe contract broken: f={} alg={} backend={}",
                    case.f, run.algorithm, run.backend
                );
                // Degree bounds follow the image-degree formulas: D(p-1) for
                // unshifted images, max(2D(p-1), (D-1)(2p-1)) for shifted.
                let (d, p) = (case.deg_bound, call.prime);
                let expected_bound = if call.shift.is_some() {
                    (2 * d * (p - 1)).max((d - 1) * (2 * p - 1))
                } else {
                    d * (p - 1)
                };
                assert_eq!(call.degree_bound, expected_bound);
                assert_eq!(call.term_bound, case.terms);
                calls_checked += 1;
            }
            let total: u64 = run.report.univariate_calls.iter().map(|c| c.probes).sum();
            assert_eq!(run.report.probes, total);

            let initial = match run.algorithm {
                Algorithm::Base => base_initial,
                Algorithm::Modulus => mod_initial,
            };
            let round_bound = ceil_log2(case.terms.max(1)) + 1;
            assert!(run.report.rounds.len() as u64 <= round_bound);
            assert!(
                run.report.univariate_interpolations
                    <= initial + case.arity as u64 * round_bound,
                "too many univariate interpolations: f={} alg={} backend={}",
                case.f,
                run.algorithm,
                run.backend
            );
        }
    }
    println!(
        "criterion 6 (probe accounting): PASS — {calls_checked} univariate calls at their \
         contracted probe counts; interpolation totals within N + n(ceil(log2 t) + 1)"
    );
}

#[test]
fn criterion_7_worked_instance_regression() {
    let ring = Ring::integers();
    let f = SparsePoly::parse("x1 + x2", &ring, 2).unwrap();

    // Base-changing trace: p = 5, five images, d0 = 2, TS = {x1, x2},
    // term-test count 3 of 4.
    let params = BaseParams::new(2, 2, 2);
    assert_eq!(
        (params.delta1, params.delta2, params.num_images, params.prime),
        (1, 2, 5, 5)
    );
    let image = |d: u64| substitute_sparse(&f, &SubstitutionSpec::new(2, d, 5)).unwrap();
    assert_eq!(image(2), UniPoly::from_u64_terms(ring.clone(), &[(1, 1), (2, 1)]));
    let shifted1 = substitute_sparse(&f, &SubstitutionSpec::shifted(2, 2, 5, 0)).unwrap();
    let shifted2 = substitute_sparse(&f, &SubstitutionSpec::shifted(2, 2, 5, 1)).unwrap();
    assert_eq!(shifted1, UniPoly::from_u64_terms(ring.clone(), &[(6, 1), (2, 1)]));
    assert_eq!(shifted2, UniPoly::from_u64_terms(ring.clone(), &[(1, 1), (7, 1)]));
    let reduced: Vec<UniPoly> = (1..=5).map(|d| image(d).mod_cyclic(5)).collect();
    let counts: Vec<usize> = reduced.iter().map(UniPoly::num_terms).collect();
    assert_eq!(counts, vec![1, 2, 2, 2, 2]);
    assert_eq!(sparse_interp::interp_base::select_ok_degree(&reduced), 2);
    let ts = sparse_interp::ts_terms(&reduced[1], &image(2), &[shifted1, shifted2], 2, 5, 2)
        .unwrap();
    let rendered: Vec<String> = ts
        .candidates
        .iter()
        .map(|(c, ev)| SparsePoly::term(ring.clone(), ev.clone(), c.clone()).to_string())
        .collect();
    assert_eq!(rendered, vec!["x1", "x2"]);
    let one = BigInt::from(1);
    let x1 = ExponentVector::from_u64s(&[1, 0]);
    let x2 = ExponentVector::from_u64s(&[0, 1]);
    let count_x1 =
        sparse_interp::interp_base::term_test_base_count(&one, &x1, &reduced[..4], 5);
    let count_x2 =
        sparse_interp::interp_base::term_test_base_count(&one, &x2, &reduced[..4], 5);
    assert_eq!((count_x1, count_x2), (3, 3));
    assert!(count_x1 > params.delta2);

    // Modulus-changing trace: N1 = 2, N2 = 3, N3 = 5, j0 = 1 (p = 2), images
    // x + 1, x^3 + 1, x + x^2, TS = {x1, x2}, term-test count 4 of 4.
    let mod_params = compute_mod_params(2, 2, 2);
    assert_eq!(
        (mod_params.n1, mod_params.n2, mod_params.n3, mod_params.num_images),
        (2, 3, 5, 5)
    );
    let image_p = |p: u64| substitute_sparse(&f, &SubstitutionSpec::new(2, 2, p)).unwrap();
    assert_eq!(image_p(2), UniPoly::from_u64_terms(ring.clone(), &[(1, 1), (0, 1)]));
    let m_shift1 = substitute_sparse(&f, &SubstitutionSpec::shifted(2, 2, 2, 0)).unwrap();
    let m_shift2 = substitute_sparse(&f, &SubstitutionSpec::shifted(2, 2, 2, 1)).unwrap();
    assert_eq!(m_shift1, UniPoly::from_u64_terms(ring.clone(), &[(3, 1), (0, 1)]));
    assert_eq!(m_shift2, UniPoly::from_u64_terms(ring.clone(), &[(1, 1), (2, 1)]));
    let mod_reduced: Vec<UniPoly> = mod_params.primes[..5]
        .iter()
        .map(|&p| image_p(p).mod_cyclic(p))
        .collect();
    assert_eq!(sparse_interp::interp_mod::select_ok_prime(&mod_reduced), 1);
    let ts = sparse_interp::ts_terms(
        &mod_reduced[0],
        &image_p(2),
        &[m_shift1, m_shift2],
        2,
        2,
        2,
    )
    .unwrap();
    assert_eq!(ts.candidates.len(), 2);
    let window = &mod_params.primes[..(mod_params.n1 + mod_params.n2 - 1) as usize];
    let window_reduced: Vec<UniPoly> =
        window.iter().map(|&p| image_p(p).mod_cyclic(p)).collect();
    let count_x1 = sparse_interp::interp_mod::term_test_mod_count(
        &one,
        &x1,
        &window_reduced,
        window,
        2,
    );
    let count_x2 = sparse_interp::interp_mod::term_test_mod_count(
        &one,
        &x2,
        &window_reduced,
        window,
        2,
    );
    assert_eq!((count_x1, count_x2), (4, 4));

    // Full runs reproduce the traces step for step.
    for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
        let bb = BlackBox::from_sparse(f.clone());
        let report = interpolate_base(&bb, 2, 2, 2, backend).unwrap();
        assert_eq!(report.poly, f);
        assert_eq!(report.rounds.len(), 1);
        assert_eq!(report.rounds[0].selected_index, 2);
        assert_eq!(report.rounds[0].selected_prime, 5);
        assert_eq!(report.rounds[0].candidates, 2);
        assert_eq!(report.rounds[0].accepted, 2);

        let bb = BlackBox::from_sparse(f.clone());
        let report = interpolate_mod(&bb, 2, 2, 2, backend).unwrap();
        assert_eq!(report.poly, f);
        assert_eq!(report.rounds.len(), 1);
        assert_eq!(report.rounds[0].selected_index, 1);
        assert_eq!(report.rounds[0].selected_prime, 2);
        assert_eq!(report.rounds[0].candidates, 2);
        assert_eq!(report.rounds[0].accepted, 2);
    }
    println!(
        "criterion 7 (worked-instance regression): PASS — both hand traces (d0=2/p=5 and \
         j0=1/p=2, TS = {{x1, x2}}, counts 3-of-4 and 4-of-4) match"
    );
}

fn expression_corpus() -> Vec<(String, usize)> {
    let mut corpus: Vec<(String, usize)> = vec![
        ("(x1+x2)^2 - x1^2 - x2^2", 2),
        ("(x1+x2)^2", 2),
        ("(x1 - x2)^3", 2),
        ("(x1 + 1)^4 - 1", 1),
        ("x1*x2*x3", 3),
        ("(x1 + x2 + x3)^2", 3),
        ("(x1 + x2 + x3)^3", 3),
        ("(x1*x2 - 1)^2 + x3", 3),
        ("x1^7 - x1", 1),
        ("(2*x1 - 3)^3", 1),
        ("(x1^2 + x2^2)^2", 2),
        ("(x1 - 1)*(x1 - 2)*(x1 - 3)", 1),
        ("(x1 + x2)*(x1 - x2)", 2),
        ("(x1 + x2)*(x2 + x3)*(x3 + x1)", 3),
        ("x1^2*x2^2*x3^2 - 1", 3),
        ("3*(x1 + x2)^2 - 2*(x1 - x2)^2", 2),
        ("(x1 + 2)*(x1 + 2)", 1),
        ("x1*(x1*(x1*(x1 + 1) + 1) + 1)", 1),
        ("-(x1 - x2)^2", 2),
        ("(x1^3 - x2)^2", 2),
        ("5", 1),
        ("0", 2),
        ("x1 - x1", 2),
        ("(1 + x1)*(1 - x1) + x1^2", 1),
        ("2*x1^2*x2 - 2*x2*x1^2", 2),
        ("(x1 + x2 + 1)^2 - (x1 + x2)^2", 2),
    ]
    .into_iter()
    .map(|(s, n)| (s.to_string(), n))
    .collect();
    // Mechanical families keep the corpus above fifty expressions.
    for k in 1..=6u64 {
        for e in 2..=3u64 {
            corpus.push((format!("(x1 + {k}*x2)^{e} - x1^{e}"), 2));
        }
    }
    for e in 2..=6u64 {
        corpus.push((format!("(x1 - 2)^{e} + x2"), 2));
    }
    for k in 1..=5u64 {
        corpus.push((format!("(x1*x2 + {k})^2 - x3^3"), 3));
    }
    for e in 2..=5u64 {
        corpus.push((format!("(x1 + x2)^{e} - (x1 - x2)^{e}"), 2));
    }
    corpus
}

#[test]
fn criterion_8_cross_oracle_expressions() {
    let ring = Ring::integers();
    let corpus = expression_corpus();
    assert!(corpus.len() >= 50, "corpus has only {}", corpus.len());
    for (i, (text, arity)) in corpus.iter().enumerate() {
        let tree = parse_expr(text, *arity, &ring).unwrap();
        let expected = verify::expand_expr(&tree);
        assert!(
            expected.total_degree() < 8u64.into(),
            "corpus expression too dense: {text}"
        );
        let terms = expected.num_terms() as u64;
        let deg_bound = u64::try_from(expected.total_degree()).unwrap() + 1;
        // Alternate driver and backend across the corpus.
        let backend = if i % 2 == 0 {
            Backend::BenOrTiwari
        } else {
            Backend::Lagrange
        };
        let bb = tree.to_blackbox();
        let report = if i % 4 < 2 {
            interpolate_base(&bb, *arity, terms, deg_bound, backend)
        } else {
            interpolate_mod(&bb, *arity, terms, deg_bound, backend)
        }
        .unwrap_or_else(|e| panic!("driver failed on `{text}`: {e}"));
        assert_eq!(
            report.poly, expected,
            "`{text}` interpolated to {} but expands to {}",
            report.poly, expected
        );
    }
    println!(
        "criterion 8 (cross-oracle expressions): PASS — {} expressions, interpolation \
         matches brute-force expansion",
        corpus.len()
    );
}

#[test]
fn criterion_9_degenerate_suite() {
    let ring = Ring::integers();
    let all = |f: &SparsePoly, t: u64, d: u64| {
        for algorithm in [Algorithm::Base, Algorithm::Modulus] {
            for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
                let bb = BlackBox::from_sparse(f.clone());
                let report = match algorithm {
                    Algorithm::Base => interpolate_base(&bb, f.arity(), t, d, backend),
                    Algorithm::Modulus => interpolate_mod(&bb, f.arity(), t, d, backend),
                }
                .unwrap_or_else(|e| panic!("degenerate case failed: f={f} T={t} D={d}: {e}"));
                assert_eq!(report.poly, *f, "f={f} alg={algorithm} backend={backend}");
            }
        }
    };

    // Zero polynomial.
    all(&SparsePoly::zero(ring.clone(), 2), 2, 2);
    all(&SparsePoly::zero(ring.clone(), 3), 0, 1);
    // Single-term polynomials.
    all(&SparsePoly::parse("7*x1^2*x2", &ring, 2).unwrap(), 1, 4);
    all(&SparsePoly::parse("-3", &ring, 2).unwrap(), 1, 1);
    // Single variable.
    all(&SparsePoly::parse("x1^5 - 3*x1 + 2", &ring, 1).unwrap(), 3, 6);
    // Term-bound overshoot: T = #f + 3.
    let f = SparsePoly::parse("4*x1*x2 - 7*x2 + 2", &ring, 2).unwrap();
    all(&f, f.num_terms() as u64 + 3, 3);

    // Degree bound at (not above) the true degree must fail loudly.
    let too_dense = parse_expr("(x1+x2)^2", 2, &ring).unwrap();
    for algorithm in [Algorithm::Base, Algorithm::Modulus] {
        for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
            let bb = too_dense.to_blackbox();
            let result = match algorithm {
                Algorithm::Base => interpolate_base(&bb, 2, 3, 2, backend),
                Algorithm::Modulus => interpolate_mod(&bb, 2, 3, 2, backend),
            };
            assert!(
                matches!(result, Err(Error::BoundsViolated(_))),
                "alg={algorithm} backend={backend} result={result:?}"
            );
        }
    }
    println!(
        "criterion 9 (degenerate suite): PASS — zero, single-term, univariate, overshoot \
         recovered; violated degree bound reported as BoundsViolated"
    );
}
