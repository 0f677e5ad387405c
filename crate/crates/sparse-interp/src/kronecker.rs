//! Kronecker-type substitutions: the bridge between a multivariate black box
//! and univariate interpolation.
//!
//! A [`SubstitutionSpec`] carries a base `d`, a prime `p`, and an optional
//! shifted coordinate `k`. It maps `x_i -> x^(w_i)` with weights
//! `w_i = d^(i-1) mod p`, and `w_k` raised by an extra `p` when the shift is
//! set. Three views of the same substitution matter:
//!
//! * the symbolic image of an explicit sparse polynomial
//!   ([`substitute_sparse`]),
//! * the evaluation-point mapping `theta -> (theta^w_1, ..., theta^w_n)`
//!   ([`image_point`]), which makes the image observable through a black box,
//! * oracle-side interpolation of the image ([`interpolate_image`]) via a
//!   univariate backend, every probe routed through the point mapping.
//!
//! The image degree is at most `D*(p-1)` without a shift and `2*D*(p-1)` with
//! one (for `p >= D`), which is what the drivers pass as degree bounds.

use num_bigint::{BigInt, BigUint};

use crate::blackbox::BlackBox;
use crate::poly::{SparsePoly, UniPoly};
use crate::primes::is_prime_u64;
use crate::ring::Ring;
use crate::univar::{self, Backend, UniOracle};
use crate::{Error, Result};

/// One substitution: base `d`, prime modulus `p`, optional shifted
/// coordinate, and the derived exponent weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSpec {
    d: u64,
    p: u64,
    shift: Option<usize>,
    weights: Vec<u64>,
}

impl SubstitutionSpec {
    /// Unshifted substitution `x_i -> x^(d^(i-1) mod p)`.
    pub fn new(arity: usize, d: u64, p: u64) -> Self {
        assert!(is_prime_u64(p), "substitution modulus {p} must be prime");
        SubstitutionSpec {
            d,
            p,
            shift: None,
            weights: weights(arity, d, p, None),
        }
    }

    /// Substitution with coordinate `var` (0-based) shifted by `p`:
    /// `x_var -> x^(d^(var) mod p + p)`.
    pub fn shifted(arity: usize, d: u64, p: u64, var: usize) -> Self {
        assert!(is_prime_u64(p), "substitution modulus {p} must be prime");
        assert!(var < arity, "shift coordinate out of range");
        SubstitutionSpec {
            d,
            p,
            shift: Some(var),
            weights: weights(arity, d, p, Some(var)),
        }
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn base(&self) -> u64 {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn shift(&self) -> Option<usize> {
        self.shift
    }

    /// Exponent weights `w_i`; each is below `p`, or below `2p` for the
    /// shifted coordinate.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Image exponent of one monomial: `sum_i e_i * w_i`.
    pub fn image_exponent(&self, exponents: &[BigUint]) -> BigUint {
        debug_assert_eq!(exponents.len(), self.weights.len());
        exponents
            .iter()
            .zip(&self.weights)
            .map(|(e, &w)| e * BigUint::from(w))
            .sum()
    }
}

/// Weights are built by repeated modular multiplication; `d^(i-1)` itself
/// overflows fixed width long before `d^(i-1) mod p` does.
fn weights(arity: usize, d: u64, p: u64, shift: Option<usize>) -> Vec<u64> {
    let mut out = Vec::with_capacity(arity);
    let mut acc: u64 = 1 % p;
    for i in 0..arity {
        let mut w = acc;
        if shift == Some(i) {
            w += p;
        }
        out.push(w);
        acc = ((acc as u128 * d as u128) % p as u128) as u64;
    }
    out
}

/// Symbolic image of an explicit polynomial: each term `c * x^e` maps to
/// `c * x^(sum_i e_i w_i)`, colliding exponents merged in the ring.
pub fn substitute_sparse(f: &SparsePoly, spec: &SubstitutionSpec) -> Result<UniPoly> {
    if f.arity() != spec.arity() {
        return Err(Error::ArityMismatch {
            expected: spec.arity(),
            got: f.arity(),
        });
    }
    Ok(UniPoly::from_terms(
        f.ring().clone(),
        f.terms()
            .map(|(ev, c)| (spec.image_exponent(ev.exponents()), c.clone())),
    ))
}

/// Evaluation-point mapping: evaluating the univariate image at `theta`
/// equals evaluating `f` at `(theta^w_1, ..., theta^w_n)`.
pub fn image_point(spec: &SubstitutionSpec, ring: &Ring, theta: &BigInt) -> Vec<BigInt> {
    if let Some(q) = ring.small_modulus() {
        let theta = ring.normalize(theta.clone());
        let theta = u64::try_from(&theta).expect("canonical residue fits");
        return spec
            .weights()
            .iter()
            .map(|&w| BigInt::from(crate::ring::powmod_u64(theta, w, q)))
            .collect();
    }
    spec.weights()
        .iter()
        .map(|&w| ring.pow_u64(theta, w))
        .collect()
}

/// Interpolates the univariate image of a black box under `spec`, routing
/// every probe through [`image_point`].
///
/// `degree_bound` must be at least the degree of the true image (the drivers
/// pass `D*(p-1)` or `2*D*(p-1)`); `term_bound` only matters to the
/// Ben-or–Tiwari backend and must be at least the image's term count.
pub fn interpolate_image(
    bb: &BlackBox,
    spec: &SubstitutionSpec,
    degree_bound: u64,
    term_bound: u64,
    backend: Backend,
) -> Result<UniPoly> {
    let ring = bb.ring().clone();
    let oracle_ring = ring.clone();
    let oracle = UniOracle::new(move |theta: &BigInt| {
        let point = image_point(spec, &oracle_ring, theta);
        bb.eval(&point).expect("arity fixed by the spec")
    });
    univar::interpolate(&oracle, backend, term_bound, degree_bound, &ring)
}
