//! Decompose a product of reciprocals of affine forms into partial
//! fractions indexed by the points of the arrangement.
//!
//! Run with: cargo run --example decompose

use hyperfrac::io::render_term_sum;
use hyperfrac::{decompose, ArrangementInput, PivotStrategy};

fn show(label: &str, input: &ArrangementInput, strategy: PivotStrategy) {
    let d = decompose(input, strategy).unwrap();
    println!("{label} ({strategy}):");
    println!("  1/product = {}", render_term_sum(&d));
    for term in d.terms() {
        let point = d.point(term.point_index);
        println!(
            "  at p = {} : ell = {} , coefficient = {}",
            point.coords, term.ell, term.coeff
        );
    }
}

fn main() {
    // Classical one-variable case: 1/(x(x+1)) = 1/x - 1/(x+1).
    let pair = ArrangementInput::from_ints(1, &[(&[1], 0), (&[1], 1)]).unwrap();
    show("1/(x(x+1))", &pair, PivotStrategy::LastRemovable);

    // Three lines in general position: every coefficient is a residue.
    let triangle =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -1)]).unwrap();
    show("1/(xy(x+y-1))", &triangle, PivotStrategy::LastRemovable);

    // A non-generic arrangement: the two pivot strategies are both valid
    // and may produce different term lists.
    let four =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, 0], -1)])
            .unwrap();
    show("1/(xy(x+y)(x-1))", &four, PivotStrategy::LastRemovable);
    show("1/(xy(x+y)(x-1))", &four, PivotStrategy::FirstRemovable);
}
