//! The two reduction strategies on the same oracle, side by side.
//!
//! The base-changing driver fixes one prime and varies the substitution
//! base; the modulus-changing driver fixes the base at the degree bound and
//! walks the small primes. Both recover the polynomial exactly; they differ
//! in how many univariate images they interpolate and at which degrees.

use sparse_interp::{interpolate_base, interpolate_mod, Backend, BlackBox, Ring, SparsePoly};

fn main() {
    let ring = Ring::integers();
    let f = SparsePoly::parse("3*x1^2*x2 - x2*x3 + 7*x3^4 - 1", &ring, 3).expect("canonical text");
    let terms = f.num_terms() as u64;
    let deg_bound = 5;

    println!("target: {f}  (T = {terms}, D = {deg_bound})\n");
    for backend in [Backend::Lagrange, Backend::BenOrTiwari] {
        let bb = BlackBox::from_sparse(f.clone());
        let base = interpolate_base(&bb, 3, terms, deg_bound, backend).expect("valid bounds");
        let bb = BlackBox::from_sparse(f.clone());
        let modulus = interpolate_mod(&bb, 3, terms, deg_bound, backend).expect("valid bounds");
        assert_eq!(base.poly, f);
        assert_eq!(modulus.poly, f);
        println!("{backend} backend:");
        println!(
            "  base-changing:    {:6} probes, {:2} univariate interpolations, {} round(s)",
            base.probes,
            base.univariate_interpolations,
            base.rounds.len()
        );
        println!(
            "  modulus-changing: {:6} probes, {:2} univariate interpolations, {} round(s)",
            modulus.probes,
            modulus.univariate_interpolations,
            modulus.rounds.len()
        );
    }
}
