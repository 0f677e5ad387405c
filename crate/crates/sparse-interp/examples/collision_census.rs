//! Collisions under Kronecker-type substitutions, and how the drivers pick a
//! substitution where at least half of the terms survive.
//!
//! A term "collides" when another term lands on the same image exponent.
//! The drivers never see the collisions directly — they only see term counts
//! of the reduced images — but maximizing that count provably rescues at
//! least half of the terms. The brute-force census below makes the hidden
//! collisions visible.

use sparse_interp::interp_base::BaseParams;
use sparse_interp::verify::{check_half_survive, collision_report, reduced_term_count};
use sparse_interp::{Ring, SparsePoly};

fn main() {
    let ring = Ring::integers();
    // Every term has total degree 3, so the base d = 1 merges them all.
    let f = SparsePoly::parse("x1^3 + x1^2*x2 + x1*x2^2 + x2^3", &ring, 2).expect("text");
    let t = f.num_terms() as u64;
    let params = BaseParams::new(2, t, 4);
    let p = params.prime;
    println!("f = {f}");
    println!("prime p = {p}; inspecting bases d = 1..{}\n", 4 * params.delta1 + 1);

    let mut best = (0u64, 0u64);
    for d in 1..=(4 * params.delta1 + 1) {
        let census = collision_report(&f, d, p);
        let surviving = reduced_term_count(&f, d, p);
        if surviving > best.1 {
            best = (d, surviving);
        }
        println!(
            "d = {d:2}: reduced image has {surviving} terms, colliding terms: {:?}",
            census
                .colliding
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        );
    }
    let (d0, count) = best;
    println!("\nok base: d0 = {d0} with {count} surviving terms");
    assert!(check_half_survive(&f, d0, p));
    println!("at least ceil(t/2) = {} of {t} terms are collision-free there", t.div_ceil(2));
}
