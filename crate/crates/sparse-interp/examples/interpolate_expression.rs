//! Recover a polynomial from an opaque arithmetic expression.
//!
//! The expression is parsed but never expanded — the interpolation drivers
//! only see it through point evaluations. Run with:
//!
//! ```text
//! cargo run --example interpolate_expression
//! ```

use sparse_interp::{interpolate_base, parse_expr, Backend, Ring};

fn main() {
    let ring = Ring::integers();
    let text = "(x1 + x2)^3 - x1^3 - x2^3";
    let tree = parse_expr(text, 2, &ring).expect("well-formed expression");
    let oracle = tree.to_blackbox();

    // Bounds: the target has at most 4 terms and degree below 4.
    let report = interpolate_base(&oracle, 2, 4, 4, Backend::BenOrTiwari).expect("valid bounds");

    println!("expression:  {text}");
    println!("recovered:   {}", report.poly);
    println!("probes:      {}", report.probes);
    println!("univariate interpolations: {}", report.univariate_interpolations);
    for round in &report.rounds {
        println!(
            "round {}: alpha={} d0={} candidates={} accepted={}",
            round.round, round.alpha, round.selected_index, round.candidates, round.accepted
        );
    }
}
