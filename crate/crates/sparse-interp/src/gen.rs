//! Seeded random instance generation for benches, the `verify` command, and
//! the test suites.
//!
//! Exponent vectors are sampled uniformly from the set `{ e : sum(e) < D }`
//! by box sampling with rejection; coefficients are uniform nonzero; distinct
//! monomials are enforced by rejection. Everything is driven by a caller-owned
//! RNG so a recorded seed reproduces the corpus exactly.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::poly::{ExponentVector, SparsePoly};
use crate::ring::Ring;

/// Largest coefficient magnitude drawn over the integers.
pub const MAX_INT_COEFF: i64 = 9;

/// Number of exponent vectors with `n` coordinates summing to less than
/// `deg_bound`, i.e. `C(deg_bound - 1 + n, n)`; saturates at `u64::MAX`.
pub fn monomials_below(arity: usize, deg_bound: u64) -> u64 {
    if deg_bound == 0 {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 1..=arity as u128 {
        result = result.saturating_mul(deg_bound as u128 - 1 + i) / i;
        if result > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    result as u64
}

/// One exponent vector, uniform over `{ e : sum(e) < deg_bound }`.
pub fn random_exponents<R: Rng>(rng: &mut R, arity: usize, deg_bound: u64) -> ExponentVector {
    assert!(deg_bound >= 1, "degree bound must be positive");
    loop {
        let e: Vec<u64> = (0..arity).map(|_| rng.gen_range(0..deg_bound)).collect();
        if e.iter().sum::<u64>() < deg_bound {
            return ExponentVector::from_u64s(&e);
        }
    }
}

/// Uniform nonzero coefficient: `[1, q-1]` over a prime field, and
/// `[-MAX_INT_COEFF, MAX_INT_COEFF] \ {0}` over the integers.
pub fn random_coefficient<R: Rng>(rng: &mut R, ring: &Ring) -> BigInt {
    match ring {
        Ring::Integers => loop {
            let c = rng.gen_range(-MAX_INT_COEFF..=MAX_INT_COEFF);
            if c != 0 {
                return BigInt::from(c);
            }
        },
        Ring::PrimeField { modulus } => {
            // Desk-scale moduli fit u64; sample a uniform residue in [1, q-1].
            let q: u64 = modulus
                .try_into()
                .expect("generator supports machine-word moduli");
            if q == 2 {
                return BigInt::one();
            }
            BigInt::from(rng.gen_range(1..q))
        }
    }
}

/// Random sparse polynomial with exactly `num_terms` distinct monomials, each
/// of total degree `< deg_bound`.
///
/// Panics if the monomial space is too small to hold `num_terms` distinct
/// vectors.
pub fn random_sparse<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    arity: usize,
    num_terms: u64,
    deg_bound: u64,
) -> SparsePoly {
    assert!(
        monomials_below(arity, deg_bound) >= num_terms,
        "not enough monomials of degree < {deg_bound} in {arity} variables for {num_terms} terms"
    );
    let mut poly = SparsePoly::zero(ring.clone(), arity);
    while (poly.num_terms() as u64) < num_terms {
        let ev = random_exponents(rng, arity, deg_bound);
        if poly.coefficient(&ev).is_some() {
            continue;
        }
        let c = random_coefficient(rng, ring);
        poly = poly
            .add(&SparsePoly::term(ring.clone(), ev, c))
            .expect("same ring and arity");
    }
    poly
}
