//! Detect whether the parameters are generic, and see the decomposition
//! collapse to one residue term per point when they are.
//!
//! Run with: cargo run --example genericity

use hyperfrac::{decompose, is_generic, residue_coefficient, ArrangementInput, PivotStrategy};

fn main() {
    // Generic: three lines meeting pairwise in three distinct points.
    let triangle =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -1)]).unwrap();
    let report = is_generic(&triangle);
    println!("triangle generic = {}", report.generic);

    let d = decompose(&triangle, PivotStrategy::LastRemovable).unwrap();
    println!("one residue term per point:");
    for term in d.terms() {
        let point = d.point(term.point_index);
        assert_eq!(term.ell, point.xp);
        assert_eq!(term.coeff, residue_coefficient(&triangle, point));
        println!(
            "  p = {} : coefficient {} (closed-form residue)",
            point.coords, term.coeff
        );
    }

    // Not generic: all three lines pass through the origin.
    let central =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]).unwrap();
    let report = is_generic(&central);
    println!("central generic = {}", report.generic);
    println!("witness: {}", serde_json::to_string(&report.witness).unwrap());
}
