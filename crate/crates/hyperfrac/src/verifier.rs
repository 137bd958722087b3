//! Independent exact oracles certifying a decomposition.
//!
//! Nothing here calls into the decomposer's algorithm: the checks are
//! phrased directly against the input forms using polynomial and scalar
//! arithmetic, after clearing denominators. A decomposition that passes
//! `verify_identity` satisfies the defining identity exactly, whatever
//! produced it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{enumerate_points, ArrangementInput, IndexSet};
use crate::decomposer::{Decomposition, PointPolynomial};
use crate::exact_linear::{Rat, RatVector};
use crate::multipoly::{product_of_forms, MultiPoly};

/// Numerators and denominators of sampled coordinates are bounded by this.
const SAMPLE_BOUND: i64 = 1_000_000;
/// Attempts per trial before sampling gives up; with finitely many
/// hyperplanes and a million-sized sample space this never triggers, but
/// the loop is guarded anyway.
const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("could not sample a point off every hyperplane after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
}

/// Outcome of the cleared-denominator identity check. On failure the
/// residual is the nonzero polynomial by which the two sides differ.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub pass: bool,
    pub residual: MultiPoly,
}

/// A point whose full-incident-set coefficient is wrong or missing.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueIssue {
    pub point_index: usize,
    pub expected: Rat,
    pub found: Option<Rat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueCheck {
    pub pass: bool,
    pub issues: Vec<ResidueIssue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointFormCheck {
    pub pass: bool,
    pub residual: MultiPoly,
}

/// Result of randomized pointwise cross-checking.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpotCheckReport {
    pub trials: usize,
    pub failures: usize,
}

impl SpotCheckReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Aggregate report over all four oracles, serialized on the CLI surface.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: bool,
    pub residues: bool,
    pub point_form: bool,
    pub spot_check: SpotCheckReport,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.identity && self.residues && self.point_form && self.spot_check.pass()
    }
}

/// Checks the defining identity after multiplying both sides by the full
/// product of forms: `Σ_terms c_ℓ · ∏_{i∉ℓ} (form_i)` must equal the
/// constant 1. The difference is returned as the residual.
pub fn verify_identity(d: &Decomposition) -> IdentityCheck {
    let input = d.input();
    let n = input.dimension();
    let full = IndexSet::full(input.len());
    let mut sum = MultiPoly::zero(n);
    for term in d.terms() {
        let complement = full.difference(&term.ell);
        let prod = product_of_forms(n, &input.forms_at(&complement))
            .expect("validated forms share the ambient dimension");
        sum = sum
            .add(&prod.scale(&term.coeff))
            .expect("sums share the ambient dimension");
    }
    let residual = sum
        .sub(&MultiPoly::one(n))
        .expect("dimensions match by construction");
    IdentityCheck {
        pass: residual.is_zero(),
        residual,
    }
}

/// Checks every point's full-incident-set coefficient against the closed
/// form `∏_{i∉X_p} 1/(form_i at p)`, computed here from scratch. A missing
/// `X_p` term is a failure.
pub fn verify_residues(d: &Decomposition) -> ResidueCheck {
    let input = d.input();
    let mut issues = Vec::new();
    for (k, point) in d.points().iter().enumerate() {
        let mut expected = Rat::one();
        for i in 0..input.len() {
            if point.xp.contains(i) {
                continue;
            }
            let value = input.form(i).eval(&point.coords);
            // Points are re-validated on every construction path, so forms
            // outside xp are nonzero here.
            expected *= &value.recip().expect("form outside xp vanishes at point");
        }
        let found = d.terms_at(k).find(|t| t.ell == point.xp).map(|t| t.coeff.clone());
        if found.as_ref() != Some(&expected) {
            issues.push(ResidueIssue {
                point_index: k,
                expected,
                found,
            });
        }
    }
    ResidueCheck {
        pass: issues.is_empty(),
        issues,
    }
}

/// Checks the per-point reformulation: `Σ_p cp · ∏_{i∉X_p} (form_i)` must
/// equal the constant 1. Points are re-enumerated from the input, so the
/// check does not trust the decomposition's own point list.
pub fn verify_point_form(cps: &[PointPolynomial], input: &ArrangementInput) -> PointFormCheck {
    let n = input.dimension();
    let points = enumerate_points(input);
    let full = IndexSet::full(input.len());
    let mut sum = MultiPoly::zero(n);
    for cp in cps {
        let Some(point) = points.get(cp.point_index) else {
            return PointFormCheck {
                pass: false,
                residual: MultiPoly::constant(n, Rat::from_int(-1)),
            };
        };
        let complement = full.difference(&point.xp);
        let prod = product_of_forms(n, &input.forms_at(&complement))
            .expect("validated forms share the ambient dimension");
        sum = sum
            .add(&prod.mul(&cp.cp).expect("dimensions match"))
            .expect("dimensions match");
    }
    let residual = sum
        .sub(&MultiPoly::one(n))
        .expect("dimensions match by construction");
    PointFormCheck {
        pass: residual.is_zero(),
        residual,
    }
}

fn sample_off_hyperplanes(
    input: &ArrangementInput,
    rng: &mut ChaCha8Rng,
) -> Result<RatVector, VerifyError> {
    let n = input.dimension();
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let coords: Vec<Rat> = (0..n)
            .map(|_| {
                let num = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
                let den = rng.gen_range(1..=SAMPLE_BOUND);
                Rat::new(num, den)
            })
            .collect();
        let p = RatVector::new(coords);
        if input.forms().iter().all(|f| !f.eval(&p).is_zero()) {
            return Ok(p);
        }
    }
    Err(VerifyError::SamplingExhausted {
        attempts: MAX_SAMPLE_ATTEMPTS,
    })
}

/// Compares both sides of the decomposition identity by exact evaluation
/// at random rational points that avoid every hyperplane. Deterministic
/// for a fixed seed. A cheap secondary check: an exact identity pass
/// implies this passes.
pub fn spot_check(
    d: &Decomposition,
    trials: usize,
    seed: u64,
) -> Result<SpotCheckReport, VerifyError> {
    let input = d.input();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let p = sample_off_hyperplanes(input, &mut rng)?;
        let mut lhs = Rat::one();
        for f in input.forms() {
            lhs *= &f.eval(&p).recip().expect("sample avoids every hyperplane");
        }
        let mut rhs = Rat::zero();
        for term in d.terms() {
            let mut prod = term.coeff.clone();
            for i in term.ell.iter() {
                prod *= &input
                    .form(i)
                    .eval(&p)
                    .recip()
                    .expect("sample avoids every hyperplane");
            }
            rhs += &prod;
        }
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(SpotCheckReport { trials, failures })
}

/// Runs all four oracles and aggregates the report. The point polynomials
/// are assembled from the decomposition's terms and then certified
/// independently by [`verify_point_form`].
pub fn run_all(
    d: &Decomposition,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    let identity = verify_identity(d);
    let residues = verify_residues(d);
    let cps = crate::decomposer::point_polynomials(d);
    let point_form = verify_point_form(&cps, d.input());
    let spot = spot_check(d, trials, seed)?;
    Ok(VerificationReport {
        identity: identity.pass,
        residues: residues.pass,
        point_form: point_form.pass,
        spot_check: spot,
    })
}
