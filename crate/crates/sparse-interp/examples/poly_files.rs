//! The `.poly` file format: a ring, an arity, and either an opaque
//! expression or an explicit sparse polynomial.

use sparse_interp::{interpolate_mod, parse_poly_file, Backend};

const EXPRESSION_ORACLE: &str = "\
# An opaque expression; only evaluations reach the interpolator.
ring: zz
n: 2
expr: (x1 - x2)*(x1 + x2)
";

const EXPLICIT_ORACLE: &str = "\
ring: fq 367
n: 3
sparse: 5*x1^2*x3 - x2 + 90
";

fn main() {
    for (name, text, terms, deg_bound) in [
        ("expression oracle", EXPRESSION_ORACLE, 2, 3),
        ("explicit oracle", EXPLICIT_ORACLE, 3, 4),
    ] {
        let file = parse_poly_file(text).expect("well-formed .poly");
        let bb = file.to_blackbox();
        let report = interpolate_mod(&bb, file.arity, terms, deg_bound, Backend::BenOrTiwari)
            .expect("valid bounds");
        println!("{name} over {}:", file.ring);
        println!("  recovered {} with {} probes", report.poly, report.probes);
    }
}
