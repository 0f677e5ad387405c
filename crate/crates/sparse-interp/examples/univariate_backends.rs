//! The two univariate backends head to head on one oracle.
//!
//! Dense Lagrange probes every point `0..=degree_bound`; Ben-or–Tiwari
//! probes `2T` powers of a base, finds the minimal linear recurrence of the
//! value sequence (Berlekamp–Massey), reads the exponents off the recurrence
//! roots, and solves a transposed Vandermonde system for the coefficients.

use std::cell::Cell;

use num_bigint::BigInt;
use sparse_interp::univar::{
    berlekamp_massey, bot_interpolate, lagrange_interpolate, solve_transposed_vandermonde,
    UniOracle,
};
use sparse_interp::{Ring, UniPoly};

fn main() {
    let ring = Ring::integers();
    let f = UniPoly::from_u64_terms(ring.clone(), &[(23, 5), (7, -2), (0, 1)]);
    println!("target: {f}");

    let probes = Cell::new(0u64);
    let oracle = UniOracle::new(|x: &BigInt| {
        probes.set(probes.get() + 1);
        f.evaluate(x)
    });
    let dense = lagrange_interpolate(&oracle, 23, &ring).expect("enough points");
    println!("lagrange:      {dense}  ({} probes)", probes.get());

    probes.set(0);
    let oracle = UniOracle::new(|x: &BigInt| {
        probes.set(probes.get() + 1);
        f.evaluate(x)
    });
    let sparse = bot_interpolate(&oracle, 3, 23, &ring).expect("term bound holds");
    println!("ben-or–tiwari: {sparse}  ({} probes)", probes.get());
    assert_eq!(dense, sparse);

    // The machinery under Ben-or–Tiwari, exposed directly: the sequence of
    // probes at powers of 2 satisfies a linear recurrence whose roots are
    // exactly 2^exponent.
    let seq: Vec<BigInt> = (0u32..6)
        .map(|i| f.evaluate(&BigInt::from(2).pow(i)))
        .collect();
    let lambda = berlekamp_massey(&ring, &seq);
    println!("minimal recurrence generator: {lambda}");
    let roots: Vec<BigInt> = [0u32, 7, 23]
        .iter()
        .map(|&e| BigInt::from(2).pow(e))
        .collect();
    let coeffs = solve_transposed_vandermonde(&ring, &roots, &seq[..3]).expect("distinct roots");
    println!("coefficients from the transposed Vandermonde solve: {coeffs:?}");
}
