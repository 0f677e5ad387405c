//! Candidate multivariate terms from one substitution's image family.
//!
//! Input: the reduced image `fmod` of some polynomial under `(d, p)`, its
//! unreduced image `f_dp`, and the `n` coordinate-shifted images. For each
//! term `a * x^r` of `fmod`, the images are grouped by exponent residue mod
//! `p`; the candidate survives only if
//!
//! * **T1** — each of the `n + 1` groups at residue `r` holds exactly one
//!   term (so the residue class is collision-free in every image),
//! * **T2** — every shifted exponent exceeds the unshifted one by a
//!   nonnegative multiple of `p`, giving `e_k = (beta_k - gamma) / p`,
//! * **T3** — the reconstructed exponents reproduce the unshifted image
//!   exponent: `sum_k e_k * (d^(k-1) mod p) = gamma`,
//! * **T4** — the total degree stays below the bound `D`.
//!
//! All four conditions are conjunctive. Every term of the source polynomial
//! that does not collide in `fmod` passes all four, so the output contains
//! all non-colliding terms (and possibly spurious extras, which the drivers
//! strip with the term-membership tests).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use crate::kronecker::SubstitutionSpec;
use crate::poly::{ExponentVector, UniPoly};
use crate::{Error, Result};

/// Candidates extracted from one substitution, tagged with its `(d, p)`.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub d: u64,
    pub p: u64,
    /// `(coefficient, exponents)` pairs with pairwise-distinct exponent
    /// vectors, each of total degree `< D`.
    pub candidates: Vec<(BigInt, ExponentVector)>,
    /// Count of elementary grouping/reconstruction steps; grows linearly in
    /// `n * #fmod`.
    pub ops: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Accepted,
    FailedT1,
    FailedT2,
    FailedT3,
    FailedT4,
}

enum Slot {
    One(BigUint, BigInt),
    Many,
}

fn residue_slots(f: &UniPoly, p: u64) -> BTreeMap<BigUint, Slot> {
    let p = BigUint::from(p);
    let mut slots: BTreeMap<BigUint, Slot> = BTreeMap::new();
    for (e, c) in f.terms() {
        let residue = e % &p;
        slots
            .entry(residue)
            .and_modify(|s| *s = Slot::Many)
            .or_insert_with(|| Slot::One(e.clone(), c.clone()));
    }
    slots
}

/// Runs the candidate extraction. `shifted[k]` is the image with coordinate
/// `k` shifted; the arity is `shifted.len()`.
///
/// The caller guarantees `fmod` is the cyclic reduction of `f_dp` and of each
/// shifted image; debug builds verify this and report
/// [`Error::PreconditionViolated`].
pub fn ts_terms(
    fmod: &UniPoly,
    f_dp: &UniPoly,
    shifted: &[UniPoly],
    d: u64,
    p: u64,
    deg_bound: u64,
) -> Result<CandidateSet> {
    if cfg!(debug_assertions) {
        if f_dp.mod_cyclic(p) != *fmod {
            return Err(Error::PreconditionViolated(
                "unshifted image does not reduce to fmod".into(),
            ));
        }
        for (k, image) in shifted.iter().enumerate() {
            if image.mod_cyclic(p) != *fmod {
                return Err(Error::PreconditionViolated(format!(
                    "shifted image {k} does not reduce to fmod"
                )));
            }
        }
    }
    let (set, _) = extract(fmod, f_dp, shifted, d, p, deg_bound);
    Ok(set)
}

/// As [`ts_terms`] but also reporting which condition eliminated each residue
/// class; used by tests to pin the necessity of each condition.
#[cfg(test)]
pub(crate) fn ts_terms_traced(
    fmod: &UniPoly,
    f_dp: &UniPoly,
    shifted: &[UniPoly],
    d: u64,
    p: u64,
    deg_bound: u64,
) -> (CandidateSet, Vec<(BigUint, Outcome)>) {
    extract(fmod, f_dp, shifted, d, p, deg_bound)
}

fn extract(
    fmod: &UniPoly,
    f_dp: &UniPoly,
    shifted: &[UniPoly],
    d: u64,
    p: u64,
    deg_bound: u64,
) -> (CandidateSet, Vec<(BigUint, Outcome)>) {
    let arity = shifted.len();
    let weights = SubstitutionSpec::new(arity, d, p);
    let weights = weights.weights();
    let p_big = BigUint::from(p);
    let deg_bound = BigUint::from(deg_bound);

    let base_slots = residue_slots(f_dp, p);
    let shifted_slots: Vec<BTreeMap<BigUint, Slot>> =
        shifted.iter().map(|f| residue_slots(f, p)).collect();

    let mut ops = 0u64;
    let mut candidates = Vec::new();
    let mut outcomes = Vec::new();
    'next_term: for (residue, coeff) in fmod.terms() {
        ops += 1;
        // T1 for the unshifted image.
        let gamma = match base_slots.get(residue) {
            Some(Slot::One(gamma, c)) => {
                debug_assert_eq!(c, coeff, "singleton coefficient must match fmod");
                gamma.clone()
            }
            _ => {
                outcomes.push((residue.clone(), Outcome::FailedT1));
                continue;
            }
        };
        let mut exponents: Vec<BigUint> = Vec::with_capacity(arity);
        for slots in &shifted_slots {
            ops += 1;
            let beta = match slots.get(residue) {
                Some(Slot::One(beta, c)) => {
                    debug_assert_eq!(c, coeff, "singleton coefficient must match fmod");
                    beta
                }
                _ => {
                    outcomes.push((residue.clone(), Outcome::FailedT1));
                    continue 'next_term;
                }
            };
            // T2: e_k = (beta - gamma) / p must be a nonnegative integer.
            if *beta < gamma {
                outcomes.push((residue.clone(), Outcome::FailedT2));
                continue 'next_term;
            }
            let diff = beta - &gamma;
            debug_assert!(
                num_traits::Zero::is_zero(&(&diff % &p_big)),
                "residues agree mod p"
            );
            exponents.push(diff / &p_big);
        }
        // T3: the exponents must reproduce the unshifted image exponent.
        let rebuilt: BigUint = exponents
            .iter()
            .zip(weights)
            .map(|(e, &w)| e * BigUint::from(w))
            .sum();
        ops += 1;
        if rebuilt != gamma {
            outcomes.push((residue.clone(), Outcome::FailedT3));
            continue;
        }
        // T4: total degree below the bound.
        if exponents.iter().sum::<BigUint>() >= deg_bound {
            outcomes.push((residue.clone(), Outcome::FailedT4));
            continue;
        }
        outcomes.push((residue.clone(), Outcome::Accepted));
        candidates.push((coeff.clone(), ExponentVector::new(exponents)));
    }
    (
        CandidateSet {
            d,
            p,
            candidates,
            ops,
        },
        outcomes,
    )
}
