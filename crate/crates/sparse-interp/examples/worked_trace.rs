//! A complete walk through one interpolation of `f = x1 + x2`, showing every
//! intermediate object the driver computes.
//!
//! With `T = 2` and `D = 2` the base-changing driver fixes `p = 5` and
//! interpolates five images. The reduced image at `d = 1` has a total
//! collision (both terms map to `x`), every other base keeps both terms
//! apart, so `d0 = 2` is selected. The two shifted images at `d0` then pin
//! the exponent vectors, and the term test confirms both candidates.

use sparse_interp::interp_base::{select_ok_degree, term_test_base_count, BaseParams};
use sparse_interp::{
    interpolate_base, substitute_sparse, ts_terms, Backend, BlackBox, Ring, SparsePoly,
    SubstitutionSpec, UniPoly,
};

fn main() {
    let ring = Ring::integers();
    let f = SparsePoly::parse("x1 + x2", &ring, 2).expect("canonical text");
    let params = BaseParams::new(2, 2, 2);
    let p = params.prime;
    println!("f = {f}, T = 2, D = 2");
    println!(
        "delta1 = {}, delta2 = {}, N = {}, p = {p}\n",
        params.delta1, params.delta2, params.num_images
    );

    let image = |d: u64| -> UniPoly {
        substitute_sparse(&f, &SubstitutionSpec::new(2, d, p)).expect("arity matches")
    };
    let reduced: Vec<UniPoly> = (1..=params.num_images)
        .map(|d| {
            let img = image(d);
            let red = img.mod_cyclic(p);
            println!("d = {d}: image {img}  -> reduced {red}  ({} terms)", red.num_terms());
            red
        })
        .collect();

    let d0 = select_ok_degree(&reduced) as u64;
    println!("\nok base d0 = {d0}");

    let shifted: Vec<UniPoly> = (0..2)
        .map(|k| {
            let img = substitute_sparse(&f, &SubstitutionSpec::shifted(2, d0, p, k))
                .expect("arity matches");
            println!("shift x{}: image {img}", k + 1);
            img
        })
        .collect();

    let candidates = ts_terms(&reduced[d0 as usize - 1], &image(d0), &shifted, d0, p, 2)
        .expect("images reduce consistently");
    println!("\ncandidate terms:");
    for (coeff, exponents) in &candidates.candidates {
        let term = SparsePoly::term(ring.clone(), exponents.clone(), coeff.clone());
        let window = (params.delta1 + params.delta2 + 1) as usize;
        let count = term_test_base_count(coeff, exponents, &reduced[..window], p);
        println!(
            "  {term}: term count drops at {count} of {window} bases (threshold {})",
            params.delta2 + 1
        );
    }

    let bb = BlackBox::from_sparse(f.clone());
    let report = interpolate_base(&bb, 2, 2, 2, Backend::Lagrange).expect("valid bounds");
    assert_eq!(report.poly, f);
    println!("\nfull run: recovered {} in {} round(s), {} probes", report.poly, report.rounds.len(), report.probes);
}
