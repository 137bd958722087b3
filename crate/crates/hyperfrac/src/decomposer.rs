//! The decomposition algorithm: the separation identity, the recursion on
//! spanning sublists, term collection, the closed-form residue coefficient,
//! and the per-point polynomial coefficients.
//!
//! The recursion works on index sublists `S` that span. If the forms of `S`
//! share a common zero `p`, the product `∏_{i∈S} 1/(form_i)` is already a
//! single term concentrated at `p`. Otherwise a pivot `z` is removed, the
//! rest is decomposed, and `z` is folded back into each resulting term:
//! either `z` vanishes at the term's point (the index joins the term), or
//! one separation step splits the product into pieces each missing one
//! factor, at the cost of strictly smaller sublists to recurse into.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

use crate::arrangement::{enumerate_points, ArrangementError, ArrangementInput, ArrangementPoint, IndexSet};
use crate::exact_linear::{express, extract_spanning_basis, AffineForm, Rat, RatVector};
use crate::multipoly::{product_of_forms, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    /// The separation constant came out zero. The recursion only separates
    /// when the pivot form is nonzero at the term's point, which forces the
    /// constant nonzero; seeing this is an algorithm bug, not a data
    /// condition.
    #[error("separation constant is zero: internal invariant violation")]
    NuZero,
    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

/// Pivot selection rule for the recursion. Two rules are built in, mainly
/// to exhibit that the non-residue coefficients of a decomposition are not
/// uniquely determined: different rules may produce different (equally
/// valid) term lists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotStrategy {
    /// Remove the highest-index form whose removal keeps the rest spanning.
    #[default]
    LastRemovable,
    /// Remove the lowest-index form whose removal keeps the rest spanning.
    FirstRemovable,
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotStrategy::LastRemovable => write!(f, "last-removable"),
            PivotStrategy::FirstRemovable => write!(f, "first-removable"),
        }
    }
}

impl FromStr for PivotStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "last-removable" => Ok(PivotStrategy::LastRemovable),
            "first-removable" => Ok(PivotStrategy::FirstRemovable),
            other => Err(format!(
                "unknown strategy {other:?}; expected last-removable or first-removable"
            )),
        }
    }
}

/// One separation step, set up for the factor list `pivot, others...`:
/// `pivot.vector = Σ alphas_i · others_i.vector` and the constant
/// `nu = pivot.mu − Σ alphas_i · others_i.mu` is nonzero.
#[derive(Clone, Debug)]
pub struct SeparationInstance {
    pivot: AffineForm,
    others: Vec<AffineForm>,
    alphas: Vec<Rat>,
    nu: Rat,
}

impl SeparationInstance {
    /// Checks the linear-combination invariant, computes `nu`, and rejects
    /// `nu = 0` (the identity does not apply there).
    pub fn new(
        pivot: AffineForm,
        others: Vec<AffineForm>,
        alphas: Vec<Rat>,
    ) -> Result<Self, DecomposeError> {
        if others.len() != alphas.len() {
            return Err(DecomposeError::Invariant(format!(
                "{} coefficients for {} forms",
                alphas.len(),
                others.len()
            )));
        }
        let n = pivot.dim();
        let mut combo = RatVector::zeros(n);
        for (a, f) in alphas.iter().zip(others.iter()) {
            if f.dim() != n {
                return Err(DecomposeError::Invariant(
                    "separation forms of mixed dimension".into(),
                ));
            }
            combo = combo.add(&f.vector.scale(a));
        }
        if combo != pivot.vector {
            return Err(DecomposeError::Invariant(
                "pivot vector is not the stated combination of the others".into(),
            ));
        }
        let mut nu = pivot.mu.clone();
        for (a, f) in alphas.iter().zip(others.iter()) {
            nu -= &(a * &f.mu);
        }
        if nu.is_zero() {
            return Err(DecomposeError::NuZero);
        }
        Ok(SeparationInstance {
            pivot,
            others,
            alphas,
            nu,
        })
    }

    pub fn nu(&self) -> &Rat {
        &self.nu
    }

    pub fn pivot(&self) -> &AffineForm {
        &self.pivot
    }

    pub fn others(&self) -> &[AffineForm] {
        &self.others
    }

    pub fn alphas(&self) -> &[Rat] {
        &self.alphas
    }
}

/// Which factor a separation entry removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dropped {
    Pivot,
    /// Position into the instance's `others` list.
    Other(usize),
}

/// Expands `1/∏(b_i + ν_i)` into a sum of products each missing one factor:
/// the entry `(1/ν, Pivot)` plus, for every nonzero `alphas_i`, the entry
/// `(−alphas_i/ν, Other(i))`. The factor list surviving each entry spans
/// the same space as the original list.
pub fn separate(instance: &SeparationInstance) -> Vec<(Rat, Dropped)> {
    let inv = instance
        .nu
        .recip()
        .expect("nu is nonzero by construction");
    let mut out = vec![(inv.clone(), Dropped::Pivot)];
    for (i, a) in instance.alphas.iter().enumerate() {
        if !a.is_zero() {
            out.push((-(a * &inv), Dropped::Other(i)));
        }
    }
    out
}

/// One collected term of a decomposition: the coefficient attached to
/// `∏_{i∈ell} 1/(form_i)`, concentrated at the point with index
/// `point_index` in the owning decomposition's point list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "point")]
    pub point_index: usize,
    pub ell: IndexSet,
    pub coeff: Rat,
}

/// A collected decomposition of `∏_{a∈X} 1/(a + μ_a)`: for each term,
/// `ell` spans and is contained in the incident set of its point, keys
/// `(point, ell)` are unique, and coefficients are nonzero. Built by
/// [`decompose`] or re-validated from serialized records by
/// [`Decomposition::from_record`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    input: ArrangementInput,
    points: Vec<ArrangementPoint>,
    terms: Vec<Term>,
    strategy: PivotStrategy,
}

impl Decomposition {
    pub fn input(&self) -> &ArrangementInput {
        &self.input
    }

    pub fn points(&self) -> &[ArrangementPoint] {
        &self.points
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn strategy(&self) -> PivotStrategy {
        self.strategy
    }

    pub fn point(&self, index: usize) -> &ArrangementPoint {
        &self.points[index]
    }

    /// Terms concentrated at the point with the given index.
    pub fn terms_at(&self, point_index: usize) -> impl Iterator<Item = &Term> {
        self.terms
            .iter()
            .filter(move |t| t.point_index == point_index)
    }
}

/// Serialized form of a decomposition; the input travels in its own file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub points: Vec<ArrangementPoint>,
    pub terms: Vec<Term>,
    pub strategy: PivotStrategy,
}

impl Decomposition {
    pub fn to_record(&self) -> DecompositionRecord {
        DecompositionRecord {
            points: self.points.clone(),
            terms: self.terms.clone(),
            strategy: self.strategy,
        }
    }

    /// Rebinds a serialized decomposition to its input, re-checking every
    /// structural invariant exactly: the recorded points must be the
    /// arrangement's points (same order), each `ell` must span and sit
    /// inside its point's incident set, coefficients must be nonzero, and
    /// `(point, ell)` keys must be unique. A mismatched input file fails
    /// here with a diagnostic rather than producing nonsense downstream.
    pub fn from_record(
        record: DecompositionRecord,
        input: ArrangementInput,
    ) -> Result<Self, String> {
        let expected = enumerate_points(&input);
        if record.points != expected {
            return Err(format!(
                "decomposition points do not match the input arrangement \
                 ({} recorded, {} expected); wrong input file?",
                record.points.len(),
                expected.len()
            ));
        }
        let n = input.dimension();
        let mut keys = std::collections::BTreeSet::new();
        for (k, term) in record.terms.iter().enumerate() {
            let point = record.points.get(term.point_index).ok_or(format!(
                "term {k} references point {} of {}",
                term.point_index,
                record.points.len()
            ))?;
            if term.coeff.is_zero() {
                return Err(format!("term {k} has zero coefficient"));
            }
            if !term.ell.is_subset_of(&point.xp) {
                return Err(format!(
                    "term {k}: ell = {} is not contained in X_p = {}",
                    term.ell, point.xp
                ));
            }
            if extract_spanning_basis(&input.vectors_at(&term.ell), n).is_err() {
                return Err(format!("term {k}: ell = {} does not span", term.ell));
            }
            if !keys.insert((term.point_index, term.ell.clone())) {
                return Err(format!(
                    "duplicate term key (point {}, ell {})",
                    term.point_index, term.ell
                ));
            }
        }
        Ok(Decomposition {
            input,
            points: record.points,
            terms: record.terms,
            strategy: record.strategy,
        })
    }
}

/// Closed-form coefficient of the full-incident-set term at `point`:
/// the product of reciprocals of the nonvanishing form values there. The
/// empty product (every form vanishes at `point`) is 1.
pub fn residue_coefficient(input: &ArrangementInput, point: &ArrangementPoint) -> Rat {
    let mut acc = Rat::one();
    for i in 0..input.len() {
        if point.xp.contains(i) {
            continue;
        }
        let value = input.form(i).eval(&point.coords);
        acc *= &value
            .recip()
            .expect("forms outside the incident set are nonzero at the point");
    }
    acc
}

/// Uncollected term produced by the recursion, keyed by the point's actual
/// coordinates rather than an index into a point list.
struct RawTerm {
    point: RatVector,
    ell: IndexSet,
    coeff: Rat,
}

struct Engine<'a> {
    input: &'a ArrangementInput,
    strategy: PivotStrategy,
    memo: BTreeMap<IndexSet, Rc<Vec<RawTerm>>>,
}

impl<'a> Engine<'a> {
    fn new(input: &'a ArrangementInput, strategy: PivotStrategy) -> Self {
        Engine {
            input,
            strategy,
            memo: BTreeMap::new(),
        }
    }

    /// Picks the pivot index to remove from `s`, per the strategy: the
    /// highest (or lowest) index whose removal keeps the rest spanning.
    fn pick_pivot(&self, s: &IndexSet) -> Result<usize, DecomposeError> {
        let n = self.input.dimension();
        let candidates: Vec<usize> = match self.strategy {
            PivotStrategy::LastRemovable => s.as_slice().iter().rev().copied().collect(),
            PivotStrategy::FirstRemovable => s.iter().collect(),
        };
        for z in candidates {
            let rest = s.without(z);
            if extract_spanning_basis(&self.input.vectors_at(&rest), n).is_ok() {
                return Ok(z);
            }
        }
        Err(DecomposeError::Invariant(format!(
            "no removable pivot in spanning sublist {s} larger than a basis"
        )))
    }

    /// Decomposes `∏_{i∈s} 1/(form_i)` for a spanning sublist `s`, returning
    /// collected raw terms. Results are memoized per sublist; every
    /// recursive call receives a strictly smaller index set.
    fn sublist(&mut self, s: &IndexSet) -> Result<Rc<Vec<RawTerm>>, DecomposeError> {
        if let Some(hit) = self.memo.get(s) {
            return Ok(Rc::clone(hit));
        }
        let n = self.input.dimension();
        let basis_pos = extract_spanning_basis(&self.input.vectors_at(s), n)
            .map_err(|e| DecomposeError::Invariant(format!("sublist {s} does not span: {e}")))?;
        let members: Vec<usize> = s.iter().collect();
        let basis: IndexSet = basis_pos.iter().map(|&k| members[k]).collect();
        let p = solve_basis_point(self.input, &basis)?;

        let concentrated = s.iter().all(|i| self.input.form(i).eval(&p).is_zero());
        let result = if concentrated {
            // Base case: the whole sublist vanishes at p, so the product is
            // already a single admissible term there.
            vec![RawTerm {
                point: p,
                ell: s.clone(),
                coeff: Rat::one(),
            }]
        } else {
            let z = self.pick_pivot(s)?;
            let rest = s.without(z);
            let sub = self.sublist(&rest)?;
            let mut acc: BTreeMap<(RatVector, IndexSet), Rat> = BTreeMap::new();
            // Fold the pivot factor 1/(form_z) into each term of the rest.
            for t in sub.iter() {
                let value = self.input.form(z).eval(&t.point);
                if value.is_zero() {
                    add_into(&mut acc, t.point.clone(), t.ell.with(z), t.coeff.clone());
                    continue;
                }
                let entries = self.separation_entries(z, t, &value)?;
                for (coeff, target) in entries {
                    match target {
                        FoldTarget::Keep(ell) => {
                            add_into(&mut acc, t.point.clone(), ell, coeff);
                        }
                        FoldTarget::Recurse(next) => {
                            let sub2 = self.sublist(&next)?;
                            for t2 in sub2.iter() {
                                add_into(
                                    &mut acc,
                                    t2.point.clone(),
                                    t2.ell.clone(),
                                    &coeff * &t2.coeff,
                                );
                            }
                        }
                    }
                }
            }
            acc.into_iter()
                .filter(|(_, coeff)| !coeff.is_zero())
                .map(|((point, ell), coeff)| RawTerm { point, ell, coeff })
                .collect()
        };
        let shared = Rc::new(result);
        self.memo.insert(s.clone(), Rc::clone(&shared));
        Ok(shared)
    }

    /// Separates the pivot factor against a term whose forms all vanish at
    /// `t.point` while `form_z` does not (`value != 0`). Returns the final
    /// contribution for the drop-pivot entry and the sublists to recurse
    /// into for each drop-other entry.
    fn separation_entries(
        &self,
        z: usize,
        t: &RawTerm,
        value: &Rat,
    ) -> Result<Vec<(Rat, FoldTarget)>, DecomposeError> {
        let n = self.input.dimension();
        let ell_members: Vec<usize> = t.ell.iter().collect();
        let basis_pos = extract_spanning_basis(&self.input.vectors_at(&t.ell), n)
            .map_err(|e| DecomposeError::Invariant(format!("term ell {} lost span: {e}", t.ell)))?;
        let basis_global: Vec<usize> = basis_pos.iter().map(|&k| ell_members[k]).collect();
        let basis_vectors: Vec<RatVector> = basis_global
            .iter()
            .map(|&i| self.input.form(i).vector.clone())
            .collect();
        let coords = express(&self.input.form(z).vector, &basis_vectors)
            .map_err(|e| DecomposeError::Invariant(format!("express failed on a basis: {e}")))?;
        let instance = SeparationInstance::new(
            self.input.form(z).clone(),
            basis_global
                .iter()
                .map(|&i| self.input.form(i).clone())
                .collect(),
            coords,
        )?;
        // Structural invariant of the fold: because every form of ell
        // vanishes at the term's point, nu equals the pivot form's value
        // there. Both are checked on every separation.
        if instance.nu() != value {
            return Err(DecomposeError::Invariant(format!(
                "separation constant {} differs from pivot value {} at {}",
                instance.nu(),
                value,
                t.point
            )));
        }
        let mut out = Vec::new();
        for (coeff, dropped) in separate(&instance) {
            let scaled = &t.coeff * &coeff;
            match dropped {
                Dropped::Pivot => out.push((scaled, FoldTarget::Keep(t.ell.clone()))),
                Dropped::Other(i) => {
                    let a = basis_global[i];
                    out.push((scaled, FoldTarget::Recurse(t.ell.without(a).with(z))));
                }
            }
        }
        Ok(out)
    }
}

enum FoldTarget {
    /// Final contribution at the current term's point and index set.
    Keep(IndexSet),
    /// Contribution scales the decomposition of a smaller sublist.
    Recurse(IndexSet),
}

fn add_into(
    acc: &mut BTreeMap<(RatVector, IndexSet), Rat>,
    point: RatVector,
    ell: IndexSet,
    coeff: Rat,
) {
    let entry = acc.entry((point, ell)).or_insert_with(Rat::zero);
    *entry += &coeff;
}

fn solve_basis_point(
    input: &ArrangementInput,
    basis: &IndexSet,
) -> Result<RatVector, DecomposeError> {
    crate::exact_linear::solve_point(&input.forms_at(basis))
        .map_err(|e| DecomposeError::Invariant(format!("basis {basis} failed to solve: {e}")))
}

/// Decomposes `∏_{a∈X} 1/(a + μ_a)` into terms `c_ℓ ∏_{i∈ℓ} 1/(form_i)`
/// indexed by the points of the arrangement. Deterministic for a fixed
/// strategy; the term list is collected (unique `(point, ell)` keys, zero
/// sums dropped) and sorted by point, then by the size and contents of
/// `ell`.
pub fn decompose(
    input: &ArrangementInput,
    strategy: PivotStrategy,
) -> Result<Decomposition, DecomposeError> {
    let points = enumerate_points(input);
    let index_of: BTreeMap<&RatVector, usize> = points
        .iter()
        .enumerate()
        .map(|(k, p)| (&p.coords, k))
        .collect();

    let mut engine = Engine::new(input, strategy);
    let raw = engine.sublist(&IndexSet::full(input.len()))?;

    let mut terms = Vec::with_capacity(raw.len());
    for t in raw.iter() {
        let point_index = *index_of.get(&t.point).ok_or_else(|| {
            DecomposeError::Invariant(format!("term point {} is not an arrangement point", t.point))
        })?;
        if !t.ell.is_subset_of(&points[point_index].xp) {
            return Err(DecomposeError::Invariant(format!(
                "term ell {} escapes X_p = {}",
                t.ell, points[point_index].xp
            )));
        }
        terms.push(Term {
            point_index,
            ell: t.ell.clone(),
            coeff: t.coeff.clone(),
        });
    }
    terms.sort_by(|a, b| {
        a.point_index
            .cmp(&b.point_index)
            .then_with(|| a.ell.len().cmp(&b.ell.len()))
            .then_with(|| a.ell.cmp(&b.ell))
    });

    Ok(Decomposition {
        input: input.clone(),
        points,
        terms,
        strategy,
    })
}

/// The polynomial coefficient attached to one point by the per-point
/// reformulation of a decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct PointPolynomial {
    #[serde(rename = "point")]
    pub point_index: usize,
    pub cp: MultiPoly,
}

/// Aggregates each point's terms into a single polynomial coefficient:
/// `cp = Σ_ℓ c_ℓ · ∏_{i ∈ X_p∖ℓ} (form_i)`, so that the whole product of
/// reciprocals equals `Σ_p cp · ∏_{i∈X_p} 1/(form_i)`.
pub fn point_polynomials(d: &Decomposition) -> Vec<PointPolynomial> {
    let n = d.input().dimension();
    d.points()
        .iter()
        .enumerate()
        .map(|(k, point)| {
            let mut cp = MultiPoly::zero(n);
            for term in d.terms_at(k) {
                let missing = point.xp.difference(&term.ell);
                let prod = product_of_forms(n, &d.input().forms_at(&missing))
                    .expect("validated forms share the ambient dimension");
                cp = cp
                    .add(&prod.scale(&term.coeff))
                    .expect("point polynomials share the ambient dimension");
            }
            PointPolynomial {
                point_index: k,
                cp,
            }
        })
        .collect()
}
