//! Enumerate the points of an arrangement and their incident form sets.
//!
//! Run with: cargo run --example enumerate_points

use hyperfrac::{enumerate_points, spanning_subsets, ArrangementInput, DEFAULT_SUBSET_CAP};

fn main() {
    // The triangle x = 0, y = 0, x + y = 1.
    let triangle =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -1)]).unwrap();

    println!("triangle arrangement:");
    for (k, point) in enumerate_points(&triangle).iter().enumerate() {
        println!("  [{k}] p = {} ; X_p = {}", point.coords, point.xp);
    }

    // The central arrangement x = 0, y = 0, x + y = 0: one point, three
    // incident forms, four spanning subsets.
    let central =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]).unwrap();

    println!("central arrangement:");
    for point in enumerate_points(&central) {
        println!("  p = {} ; X_p = {}", point.coords, point.xp);
        let family = spanning_subsets(&central, &point, DEFAULT_SUBSET_CAP).unwrap();
        for subset in family {
            println!("    spans: {subset}");
        }
    }
}
