//! Exact partial-fraction decomposition over the points of a hyperplane
//! arrangement.
//!
//! A list of affine-linear forms `a_i + μ_i` whose vectors span `n`-space
//! cuts the dual space into a hyperplane arrangement. This crate decomposes
//! the product of reciprocals `∏_i 1/(a_i + μ_i)` into a sum of terms
//! `c_ℓ ∏_{i∈ℓ} 1/(a_i + μ_i)`, where each index set `ℓ` spans and is
//! concentrated at a single point of the arrangement. All arithmetic is
//! exact rational; results come with independent verification oracles that
//! certify the identity by clearing denominators.
//!
//! ```
//! use hyperfrac::{decompose, verify_identity, ArrangementInput, PivotStrategy};
//!
//! // 1/(x(x+1)) = 1/x - 1/(x+1)
//! let input = ArrangementInput::from_ints(1, &[(&[1], 0), (&[1], 1)]).unwrap();
//! let d = decompose(&input, PivotStrategy::LastRemovable).unwrap();
//! assert_eq!(d.terms().len(), 2);
//! assert!(verify_identity(&d).pass);
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! point enumeration, decomposition, verification, genericity detection,
//! per-point polynomial coefficients, and the separation identity itself.

pub mod arrangement;
pub mod decomposer;
pub mod exact_linear;
pub mod io;
pub mod multipoly;
pub mod verifier;

pub use arrangement::{
    enumerate_points, is_generic, spanning_subsets, ArrangementError, ArrangementInput,
    ArrangementPoint, GenericityReport, GenericityWitness, IndexSet, DEFAULT_SUBSET_CAP,
};
pub use decomposer::{
    decompose, point_polynomials, residue_coefficient, separate, Decomposition,
    DecompositionRecord, DecomposeError, Dropped, PivotStrategy, PointPolynomial,
    SeparationInstance, Term,
};
pub use exact_linear::{
    express, extract_spanning_basis, solve_point, AffineForm, LinearError, Rat, RatMatrix,
    RatVector,
};
pub use multipoly::{product_of_forms, MultiPoly, PolyError};
pub use verifier::{
    run_all, spot_check, verify_identity, verify_point_form, verify_residues, IdentityCheck,
    PointFormCheck, ResidueCheck, ResidueIssue, SpotCheckReport, VerificationReport, VerifyError,
};
