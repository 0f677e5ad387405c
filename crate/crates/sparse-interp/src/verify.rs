//! Independent brute-force oracles for the test suites.
//!
//! Everything here recomputes quantities from first principles — pairwise
//! exponent comparisons, explicit pair-difference polynomials, exact
//! big-integer products — deliberately sharing no code with the substitution
//! and interpolation paths it is meant to falsify. The checks mirror the
//! combinatorial facts the algorithms rely on: collision censuses, the
//! at-least-half survival guarantee of the selected substitution, the
//! doubling relation between collision counts, and the prime-power
//! divisibility that powers the ok-prime argument.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::blackbox::{ExprTree, Node};
use crate::poly::{ExponentVector, SparsePoly, UniPoly};
use crate::ring::Ring;

/// Per-term collision census of `f` under the substitution `(d, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub d: u64,
    pub p: u64,
    /// Flags aligned with the canonical (ascending lexicographic) term order.
    pub colliding: Vec<bool>,
    /// Number of colliding terms (the census counts terms, not blocks).
    pub colliding_count: u64,
}

/// Weights `d^(i-1) mod p` computed locally so this oracle stays independent
/// of the substitution code it checks.
fn local_weights(arity: usize, d: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(arity);
    let mut acc = 1 % p;
    for _ in 0..arity {
        out.push(acc);
        acc = ((acc as u128 * d as u128) % p as u128) as u64;
    }
    out
}

fn term_residues(f: &SparsePoly, d: u64, p: u64) -> Vec<BigUint> {
    let weights = local_weights(f.arity(), d, p);
    let p_big = BigUint::from(p);
    f.terms()
        .map(|(ev, _)| {
            let total: BigUint = ev
                .exponents()
                .iter()
                .zip(&weights)
                .map(|(e, &w)| e * BigUint::from(w))
                .sum();
            total % &p_big
        })
        .collect()
}

/// Flags each term of `f` that shares its reduced image exponent with another
/// term, by direct pairwise comparison.
pub fn collision_report(f: &SparsePoly, d: u64, p: u64) -> CollisionReport {
    let residues = term_residues(f, d, p);
    let t = residues.len();
    let mut colliding = vec![false; t];
    for i in 0..t {
        for j in i + 1..t {
            if residues[i] == residues[j] {
                colliding[i] = true;
                colliding[j] = true;
            }
        }
    }
    let colliding_count = colliding.iter().filter(|&&c| c).count() as u64;
    CollisionReport {
        d,
        p,
        colliding,
        colliding_count,
    }
}

pub fn non_colliding_count(f: &SparsePoly, d: u64, p: u64) -> u64 {
    f.num_terms() as u64 - collision_report(f, d, p).colliding_count
}

/// Term count of the reduced image `f_(d,p) mod (x^p - 1)` — residue classes
/// whose coefficient sums do not cancel.
pub fn reduced_term_count(f: &SparsePoly, d: u64, p: u64) -> u64 {
    let residues = term_residues(f, d, p);
    let mut sums: std::collections::BTreeMap<BigUint, BigInt> = Default::default();
    for (residue, (_, c)) in residues.into_iter().zip(f.terms()) {
        let entry = sums.entry(residue).or_insert_with(BigInt::zero);
        *entry = f.ring().add(entry, c);
    }
    sums.values().filter(|c| !c.is_zero()).count() as u64
}

/// Does at least half of `f` survive without collision at `(d, p)`?
pub fn check_half_survive(f: &SparsePoly, d: u64, p: u64) -> bool {
    let t = f.num_terms() as u64;
    non_colliding_count(f, d, p) >= t.div_ceil(2)
}

/// If the reduced image at `d1` has at least as many terms as at `d2`, its
/// collision count is at most twice the one at `d2`. Vacuously true when the
/// hypothesis fails.
pub fn check_doubling_lemma(f: &SparsePoly, p: u64, d1: u64, d2: u64) -> bool {
    if reduced_term_count(f, d1, p) < reduced_term_count(f, d2, p) {
        return true;
    }
    let c1 = collision_report(f, d1, p).colliding_count;
    let c2 = collision_report(f, d2, p).colliding_count;
    c1 <= 2 * c2
}

/// The pair-difference polynomial of terms `u` and `v` (canonical-order
/// indices) over `F_p`: `sum_k (e_u,k - e_v,k) x^(k-1) mod p`. Its roots are
/// exactly the bases `d` at which the two terms collide.
pub fn pair_difference_poly(f: &SparsePoly, u: usize, v: usize, p: u64) -> UniPoly {
    let ring = Ring::prime_field(p).expect("prime modulus");
    let terms: Vec<&ExponentVector> = f.terms().map(|(ev, _)| ev).collect();
    let (eu, ev) = (terms[u], terms[v]);
    UniPoly::from_terms(
        ring,
        eu.exponents()
            .iter()
            .zip(ev.exponents())
            .enumerate()
            .map(|(k, (a, b))| {
                let diff = BigInt::from(a.clone()) - BigInt::from(b.clone());
                (BigUint::from(k), diff)
            }),
    )
}

/// The exact pairwise product `A = prod_{u<v} sum_k (e_u,k - e_v,k) *
/// base^(k-1)` over the integers. Nonzero whenever the terms are distinct
/// monomials of total degree below `base`.
pub fn collision_pair_product(f: &SparsePoly, base: u64) -> BigInt {
    let terms: Vec<&ExponentVector> = f.terms().map(|(ev, _)| ev).collect();
    let base = BigInt::from(base);
    let mut product = BigInt::one();
    for u in 0..terms.len() {
        for v in u + 1..terms.len() {
            let mut factor = BigInt::zero();
            let mut power = BigInt::one();
            for (a, b) in terms[u].exponents().iter().zip(terms[v].exponents()) {
                let diff = BigInt::from(a.clone()) - BigInt::from(b.clone());
                factor += diff * &power;
                power *= &base;
            }
            product *= factor;
        }
    }
    product
}

/// Divisibility behind the ok-prime bound: with `s` colliding terms at
/// `(base, p)`, `p^ceil(s/2)` divides the pair product `A`.
pub fn divisibility_check(f: &SparsePoly, base: u64, p: u64) -> bool {
    let s = collision_report(f, base, p).colliding_count;
    let a = collision_pair_product(f, base);
    let needed = s.div_ceil(2);
    let modulus = BigInt::from(p).pow(u32::try_from(needed).expect("desk-scale collision count"));
    (a % modulus).is_zero()
}

/// Brute-force symbolic expansion of an expression tree; the independent
/// oracle for interpolating parsed black boxes.
pub fn expand_expr(tree: &ExprTree) -> SparsePoly {
    expand_node(tree.root(), tree.ring(), tree.arity())
}

fn expand_node(node: &Node, ring: &Ring, arity: usize) -> SparsePoly {
    match node {
        Node::Const(c) => SparsePoly::constant(ring.clone(), arity, c.clone()),
        Node::Var(i) => {
            let mut exps = vec![BigUint::zero(); arity];
            exps[*i] = BigUint::one();
            SparsePoly::term(ring.clone(), ExponentVector::new(exps), BigInt::one())
        }
        Node::Add(a, b) => expand_node(a, ring, arity)
            .add(&expand_node(b, ring, arity))
            .expect("same ring and arity"),
        Node::Sub(a, b) => expand_node(a, ring, arity)
            .sub(&expand_node(b, ring, arity))
            .expect("same ring and arity"),
        Node::Mul(a, b) => mul_sparse(&expand_node(a, ring, arity), &expand_node(b, ring, arity)),
        Node::Neg(a) => expand_node(a, ring, arity).neg(),
        Node::Pow(a, e) => {
            let base = expand_node(a, ring, arity);
            let mut result = SparsePoly::constant(ring.clone(), arity, BigInt::one());
            let e: u64 = e.try_into().expect("desk-scale exponent");
            for _ in 0..e {
                result = mul_sparse(&result, &base);
            }
            result
        }
    }
}

/// Naive sparse product; quadratic in the term counts, which is the point —
/// it shares nothing with the interpolation path.
fn mul_sparse(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let ring = a.ring().clone();
    let arity = a.arity();
    let mut terms: Vec<(ExponentVector, BigInt)> = Vec::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let exps: Vec<BigUint> = ea
                .exponents()
                .iter()
                .zip(eb.exponents())
                .map(|(x, y)| x + y)
                .collect();
            terms.push((ExponentVector::new(exps), ring.mul(ca, cb)));
        }
    }
    SparsePoly::from_terms(ring, arity, terms).expect("arity preserved")
}
