//! Aggregate each point's terms into a single polynomial coefficient, so
//! the decomposition reads as one summand per point.
//!
//! Run with: cargo run --example point_polynomials

use hyperfrac::verifier::verify_point_form;
use hyperfrac::{decompose, point_polynomials, ArrangementInput, PivotStrategy};

fn main() {
    // Non-generic input: at the origin several index sets contribute, and
    // the aggregate coefficient is a genuine degree-1 polynomial.
    let input =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0), (&[1, 0], -1)])
            .unwrap();
    let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();
    let cps = point_polynomials(&d);

    for cp in &cps {
        let point = d.point(cp.point_index);
        println!("p = {} : coefficient polynomial {}", point.coords, cp.cp);
    }

    // The per-point form is itself an exact identity; certify it.
    let check = verify_point_form(&cps, d.input());
    println!("point-form identity holds: {}", check.pass);

    // The polynomial coefficients serialize as exponent/coefficient records.
    println!("{}", serde_json::to_string_pretty(&cps).unwrap());
}
