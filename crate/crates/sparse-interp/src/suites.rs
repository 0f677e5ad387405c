//! Seeded property suites behind the `verify` command: randomized checks of
//! the combinatorial facts ([`crate::verify`]) and end-to-end round-trips of
//! both drivers. On failure the offending instance is shrunk by dropping
//! terms while the failure persists, and the minimized counterexample is
//! reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blackbox::BlackBox;
use crate::gen;
use crate::interp_base::interpolate_base;
use crate::interp_mod::{compute_mod_params, interpolate_mod};
use crate::poly::SparsePoly;
use crate::report::Algorithm;
use crate::ring::Ring;
use crate::univar::Backend;
use crate::{interp_base::BaseParams, primes, verify};

/// Which property families to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Lemmas,
    Roundtrip,
    All,
}

impl std::str::FromStr for Scope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lemmas" => Ok(Scope::Lemmas),
            "roundtrip" => Ok(Scope::Roundtrip),
            "all" => Ok(Scope::All),
            other => Err(format!(
                "unknown scope `{other}`; use lemmas, roundtrip, or all"
            )),
        }
    }
}

/// A failed property with its minimized witness.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub property: String,
    pub witness: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "property `{}` failed on {}", self.property, self.witness)
    }
}

/// Drops terms one at a time while the failure persists.
fn shrink(f: &SparsePoly, still_fails: impl Fn(&SparsePoly) -> bool) -> SparsePoly {
    let mut current = f.clone();
    loop {
        let mut improved = false;
        let terms: Vec<_> = current
            .terms()
            .map(|(ev, c)| (ev.clone(), c.clone()))
            .collect();
        for (ev, c) in terms {
            let candidate = current
                .sub(&SparsePoly::term(current.ring().clone(), ev, c))
                .expect("same ring");
            if still_fails(&candidate) {
                current = candidate;
                improved = true;
                break;
            }
        }
        if !improved {
            return current;
        }
    }
}

fn fail(
    property: &str,
    f: &SparsePoly,
    detail: &str,
    still_fails: impl Fn(&SparsePoly) -> bool,
) -> Counterexample {
    let minimized = shrink(f, still_fails);
    Counterexample {
        property: property.to_string(),
        witness: format!("f = `{minimized}` ({detail})"),
    }
}

/// Randomized checks of the collision lemmas. Returns the first failure.
pub fn run_lemma_suite(seed: u64, count: u64) -> Result<(), Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Ring::integers();
    for _ in 0..count {
        let arity = rng.gen_range(1..5usize);
        let deg_bound = rng.gen_range(1..6u64);
        let num_terms = gen::monomials_below(arity, deg_bound).min(rng.gen_range(1..7u64));
        let f = gen::random_sparse(&mut rng, &ring, arity, num_terms, deg_bound);
        let t = f.num_terms() as u64;

        // Collision doubling under a shared prime.
        let p = primes::next_prime_geq(rng.gen_range(2..16u64));
        let d1 = rng.gen_range(1..16u64);
        let d2 = rng.gen_range(1..16u64);
        if !verify::check_doubling_lemma(&f, p, d1, d2) {
            return Err(fail(
                "collision-doubling",
                &f,
                &format!("p={p} d1={d1} d2={d2}"),
                |g| !verify::check_doubling_lemma(g, p, d1, d2),
            ));
        }

        // Per-term bound on collision-free bases in a window.
        if t >= 1 {
            let delta1 = (arity as u64 - 1) * (t - 1);
            let p2 = primes::next_prime_geq(delta1.max(arity as u64).max(deg_bound).max(2));
            let delta = rng.gen_range(delta1.max(1)..=p2);
            for idx in 0..t as usize {
                let good = (1..=delta)
                    .filter(|&d| !verify::collision_report(&f, d, p2).colliding[idx])
                    .count() as u64;
                if good < delta - delta1 {
                    return Err(fail(
                        "noncolliding-base-count",
                        &f,
                        &format!("term #{idx} p={p2} delta={delta}"),
                        |g| {
                            (0..g.num_terms()).any(|i| {
                                let good = (1..=delta)
                                    .filter(|&d| !verify::collision_report(g, d, p2).colliding[i])
                                    .count() as u64;
                                good < delta - delta1
                            })
                        },
                    ));
                }
            }
        }

        // Pair-difference roots cover at least half the collisions.
        if t >= 2 {
            let p3 = primes::next_prime_geq(deg_bound.max(arity as u64).max(3));
            let d0 = rng.gen_range(1..=p3);
            let s = verify::collision_report(&f, d0, p3).colliding_count;
            let vanishing = {
                let tt = f.num_terms();
                let mut v = 0u64;
                for u in 0..tt {
                    for w in u + 1..tt {
                        if verify::pair_difference_poly(&f, u, w, p3)
                            .evaluate(&num_bigint::BigInt::from(d0))
                            == num_bigint::BigInt::from(0)
                        {
                            v += 1;
                        }
                    }
                }
                v
            };
            if vanishing < s.div_ceil(2) {
                return Err(Counterexample {
                    property: "pair-difference-root-count".into(),
                    witness: format!("f = `{f}` (d0={d0} p={p3} s={s} vanishing={vanishing})"),
                });
            }
        }

        // Collision primes per term stay below N1.
        let params = compute_mod_params(arity, t, deg_bound);
        let window = (params.n1 + params.n2 - 1) as usize;
        for idx in 0..t as usize {
            let colliding = params.primes[..window]
                .iter()
                .filter(|&&pj| verify::collision_report(&f, deg_bound, pj).colliding[idx])
                .count() as u64;
            if colliding > params.n1 - 1 {
                return Err(Counterexample {
                    property: "collision-prime-count".into(),
                    witness: format!("f = `{f}` (term #{idx}, D={deg_bound})"),
                });
            }
        }

        // Prime-power divisibility of the pair product.
        let p4 = primes::first_primes(8)[rng.gen_range(0..8)];
        if !verify::divisibility_check(&f, deg_bound, p4) {
            return Err(fail(
                "pair-product-divisibility",
                &f,
                &format!("D={deg_bound} p={p4}"),
                |g| !verify::divisibility_check(g, deg_bound, p4),
            ));
        }

        // The maximizing base rescues at least half the terms.
        if t >= 1 {
            let params = BaseParams::new(arity, t, deg_bound);
            let range = 4 * params.delta1 + 1;
            let best = (1..=range)
                .max_by_key(|&d| (verify::reduced_term_count(&f, d, params.prime), std::cmp::Reverse(d)))
                .expect("nonempty range");
            if !verify::check_half_survive(&f, best, params.prime) {
                return Err(Counterexample {
                    property: "ok-base-half-survival".into(),
                    witness: format!("f = `{f}` (d0={best} p={})", params.prime),
                });
            }
        }
    }
    Ok(())
}

/// Randomized end-to-end round trips of both drivers and both backends.
pub fn run_roundtrip_suite(seed: u64, count: u64) -> Result<(), Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let arity = rng.gen_range(1..4usize);
        let deg_bound = rng.gen_range(1..5u64);
        let num_terms = gen::monomials_below(arity, deg_bound).min(rng.gen_range(1..6u64));
        let algorithm = if rng.gen_bool(0.5) {
            Algorithm::Base
        } else {
            Algorithm::Modulus
        };
        let backend = if rng.gen_bool(0.5) {
            Backend::Lagrange
        } else {
            Backend::BenOrTiwari
        };
        let ring = if rng.gen_bool(0.5) {
            Ring::integers()
        } else {
            Ring::prime_field(smallest_admissible_prime(arity, num_terms, deg_bound)).unwrap()
        };
        let f = gen::random_sparse(&mut rng, &ring, arity, num_terms, deg_bound);
        let run = |g: &SparsePoly| -> bool {
            let bb = BlackBox::from_sparse(g.clone());
            let report = match algorithm {
                Algorithm::Base => interpolate_base(&bb, arity, num_terms, deg_bound, backend),
                Algorithm::Modulus => interpolate_mod(&bb, arity, num_terms, deg_bound, backend),
            };
            match report {
                Ok(r) => r.poly == *g,
                Err(_) => false,
            }
        };
        if !run(&f) {
            return Err(fail(
                "roundtrip-exactness",
                &f,
                &format!("ring={ring} alg={algorithm} backend={backend} T={num_terms} D={deg_bound}"),
                |g| !run(g),
            ));
        }
    }
    Ok(())
}

/// Smallest prime field admissible for every driver/backend combination at
/// the given bounds: the worst image degree bound is `2*D*(p_max - 1)` and
/// the Ben-or–Tiwari base needs order above it.
pub fn smallest_admissible_prime(arity: usize, term_bound: u64, degree_bound: u64) -> u64 {
    let base_params = BaseParams::new(arity, term_bound, degree_bound);
    let mod_params = compute_mod_params(arity, term_bound, degree_bound);
    let p_base = base_params.prime;
    let p_mod = mod_params.primes[mod_params.num_images as usize - 1];
    let worst = 2 * degree_bound * (p_base.max(p_mod) - 1);
    primes::next_prime_geq(worst + 2)
}
