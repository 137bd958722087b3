//! Certify a decomposition with the independent oracles, then break it on
//! purpose and watch them fail.
//!
//! Run with: cargo run --example verify

use hyperfrac::verifier::{run_all, verify_identity};
use hyperfrac::{decompose, ArrangementInput, PivotStrategy, Rat};

fn main() {
    let input =
        ArrangementInput::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], -1)]).unwrap();
    let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();

    let report = run_all(&d, 100, 0).unwrap();
    println!("valid decomposition:");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    // Perturb one coefficient; the cleared-denominator identity must break,
    // and the residual polynomial shows by how much.
    let mut record = d.to_record();
    record.terms[1].coeff = &record.terms[1].coeff + &Rat::from_int(1);
    let bad = hyperfrac::Decomposition::from_record(record, input).unwrap();
    let check = verify_identity(&bad);
    println!("tampered coefficient: pass = {}", check.pass);
    println!("residual = {}", check.residual);
}
