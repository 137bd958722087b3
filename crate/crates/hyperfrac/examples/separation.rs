//! The separation identity on its own: rewrite 1/∏(b_i + ν_i) as a sum of
//! products each missing one factor.
//!
//! Run with: cargo run --example separation

use hyperfrac::{separate, AffineForm, Dropped, Rat, SeparationInstance};

fn main() {
    // Factors x+1 (pivot) and x: the pivot vector is 1·(vector of x), so
    // the separation constant is nu = 1 - 1·0 = 1 and
    // 1/(x(x+1)) = 1/x - 1/(x+1).
    let instance = SeparationInstance::new(
        AffineForm::from_ints(&[1], 1),
        vec![AffineForm::from_ints(&[1], 0)],
        vec![Rat::one()],
    )
    .unwrap();

    println!("nu = {}", instance.nu());
    for (coeff, dropped) in separate(&instance) {
        match dropped {
            Dropped::Pivot => println!("  {coeff} x [product without the pivot]"),
            Dropped::Other(i) => println!("  {coeff} x [product without factor {i}]"),
        }
    }

    // nu = 0 means the identity does not apply; the constructor refuses.
    let degenerate = SeparationInstance::new(
        AffineForm::from_ints(&[1], 0),
        vec![AffineForm::from_ints(&[1], 0)],
        vec![Rat::one()],
    );
    println!("nu = 0 instance rejected: {}", degenerate.is_err());
}
