//! Interpolation over a prime field, including how large the field must be.
//!
//! The univariate images have degrees up to roughly `2 * D * p`, so the
//! field needs at least that many usable points (Lagrange) or an element of
//! that multiplicative order (Ben-or–Tiwari).
//! [`sparse_interp::suites::smallest_admissible_prime`] computes the
//! smallest modulus that works for every driver/backend combination.

use sparse_interp::suites::smallest_admissible_prime;
use sparse_interp::{interpolate_base, interpolate_mod, Backend, BlackBox, Error, Ring, SparsePoly};

fn main() {
    let (arity, terms, deg_bound) = (2, 2, 2);
    let q = smallest_admissible_prime(arity, terms, deg_bound);
    println!("smallest admissible modulus for n={arity}, T={terms}, D={deg_bound}: q = {q}");

    let ring = Ring::prime_field(q).expect("prime");
    let f = SparsePoly::parse("x1 + 40*x2", &ring, arity).expect("canonical text");
    let bb = BlackBox::from_sparse(f.clone());
    let report =
        interpolate_base(&bb, arity, terms, deg_bound, Backend::BenOrTiwari).expect("fits");
    assert_eq!(report.poly, f);
    println!("recovered over F_{q}: {}  ({} probes)", report.poly, report.probes);

    // A field that is too small is rejected before any probe is spent.
    let tiny = Ring::prime_field(5).expect("prime");
    let g = SparsePoly::parse("x1 + x2", &tiny, arity).expect("canonical text");
    let bb = BlackBox::from_sparse(g);
    match interpolate_mod(&bb, arity, terms, deg_bound, Backend::Lagrange) {
        Err(Error::RingTooSmall { needed, order }) => {
            println!("F_5 rejected: needs {needed} usable elements, has {order} (0 probes spent)");
        }
        other => panic!("expected a ring-size rejection, got {other:?}"),
    }
    assert_eq!(bb.probes(), 0);
}
