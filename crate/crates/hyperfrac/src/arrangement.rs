//! Combinatorics of the affine arrangement: input validation, enumeration
//! of the points, the incident index sets `X_p`, the spanning-subset
//! families `L(X_p)`, and genericity detection.
//!
//! The forms are a *list*, not a set: repeated identical forms are legal
//! and tracked by index, which is what lets an index set encode repeated
//! denominator factors such as `1/x^2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linear::{solve_point, AffineForm, RatMatrix, RatVector};

/// Cap on `|X_p|` before spanning-subset enumeration refuses to run; the
/// family is exponential in `|X_p|`.
pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("need m >= n >= 1 forms in dimension n, got n = {n}, m = {m}")]
    BadDimension { n: usize, m: usize },
    #[error("form {index} has a zero vector part")]
    ZeroVectorForm { index: usize },
    #[error("form {index} has vector length {got}, expected dimension {expected}")]
    WrongVectorLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("forms do not span: rank {rank} < dimension {n}")]
    NotSpanning { rank: usize, n: usize },
    #[error("point is incident to {size} forms, above the spanning-subset cap {cap}")]
    SubsetExplosion { size: usize, cap: usize },
}

/// Sorted set of distinct indices into the form list. Models sublists of
/// the input (`X_p`, `ℓ`) as sets of positions, so duplicate forms at
/// different positions stay distinguishable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn full(m: usize) -> Self {
        IndexSet((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// Union with a single index.
    pub fn with(&self, i: usize) -> IndexSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&i) {
            v.insert(pos, i);
        }
        IndexSet(v)
    }

    /// Removal of a single index.
    pub fn without(&self, i: usize) -> IndexSet {
        let mut v = self.0.clone();
        if let Ok(pos) = v.binary_search(&i) {
            v.remove(pos);
        }
        IndexSet(v)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().filter(|&i| !other.contains(i)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

/// Validated arrangement input: ambient dimension `n` and an indexed list
/// of `m >= n` affine forms whose vectors span `n`-space and are all
/// nonzero. Constructed only through [`ArrangementInput::new`], so every
/// instance in circulation satisfies the invariants.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InputRecord")]
pub struct ArrangementInput {
    dimension: usize,
    forms: Vec<AffineForm>,
}

#[derive(Deserialize)]
struct InputRecord {
    dimension: usize,
    forms: Vec<AffineForm>,
}

impl TryFrom<InputRecord> for ArrangementInput {
    type Error = ArrangementError;
    fn try_from(r: InputRecord) -> Result<Self, Self::Error> {
        ArrangementInput::new(r.dimension, r.forms)
    }
}

impl ArrangementInput {
    pub fn new(dimension: usize, forms: Vec<AffineForm>) -> Result<Self, ArrangementError> {
        let n = dimension;
        let m = forms.len();
        if n < 1 || m < n {
            return Err(ArrangementError::BadDimension { n, m });
        }
        for (index, f) in forms.iter().enumerate() {
            if f.dim() != n {
                return Err(ArrangementError::WrongVectorLength {
                    index,
                    expected: n,
                    got: f.dim(),
                });
            }
            if f.vector.is_zero() {
                return Err(ArrangementError::ZeroVectorForm { index });
            }
        }
        let vectors: Vec<RatVector> = forms.iter().map(|f| f.vector.clone()).collect();
        let rank = RatMatrix::from_rows(&vectors).rank();
        if rank < n {
            return Err(ArrangementError::NotSpanning { rank, n });
        }
        Ok(ArrangementInput { dimension, forms })
    }

    /// Convenience over integer data, for code and tests.
    pub fn from_ints(dimension: usize, forms: &[(&[i64], i64)]) -> Result<Self, ArrangementError> {
        ArrangementInput::new(
            dimension,
            forms
                .iter()
                .map(|(v, mu)| AffineForm::from_ints(v, *mu))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of forms, `m`.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m >= n >= 1 by construction
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &AffineForm {
        &self.forms[i]
    }

    pub fn forms_at(&self, indices: &IndexSet) -> Vec<AffineForm> {
        indices.iter().map(|i| self.forms[i].clone()).collect()
    }

    pub fn vectors_at(&self, indices: &IndexSet) -> Vec<RatVector> {
        indices.iter().map(|i| self.forms[i].vector.clone()).collect()
    }

    /// Indices of all forms vanishing at `p`.
    pub fn incident_set(&self, p: &RatVector) -> IndexSet {
        (0..self.len())
            .filter(|&i| self.forms[i].eval(p).is_zero())
            .collect()
    }
}

impl fmt::Debug for ArrangementInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrangementInput(n = {}, forms = {:?})", self.dimension, self.forms)
    }
}

/// A point of the arrangement: a rational point `coords` of the dual space
/// together with the index set `xp` of all forms vanishing there. The
/// vectors indexed by `xp` span, which is what makes `coords` a point of
/// the arrangement rather than a higher-dimensional stratum.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementPoint {
    pub coords: RatVector,
    pub xp: IndexSet,
}

impl fmt::Debug for ArrangementPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {} ; X_p = {}", self.coords, self.xp)
    }
}

/// Enumerates the points of the arrangement: solve every size-`n` index
/// subset with independent vectors for its unique common zero, deduplicate
/// exactly, and record the full incident set of each survivor. Output is
/// sorted by coordinates (lexicographic on rationals), so runs are
/// reproducible byte-for-byte.
///
/// The list is nonempty: a spanning list contains at least one basis.
pub fn enumerate_points(input: &ArrangementInput) -> Vec<ArrangementPoint> {
    let n = input.dimension();
    let mut seen: BTreeSet<RatVector> = BTreeSet::new();
    for combo in (0..input.len()).combinations(n) {
        let subset: IndexSet = combo.into_iter().collect();
        if let Ok(p) = solve_point(&input.forms_at(&subset)) {
            seen.insert(p);
        }
    }
    seen.into_iter()
        .map(|coords| {
            let xp = input.incident_set(&coords);
            ArrangementPoint { coords, xp }
        })
        .collect()
}

/// All subsets of `point.xp` (any size >= n) whose vectors span, sorted by
/// size then lexicographically. This is the family indexing the terms a
/// decomposition may use at this point.
pub fn spanning_subsets(
    input: &ArrangementInput,
    point: &ArrangementPoint,
    cap: usize,
) -> Result<Vec<IndexSet>, ArrangementError> {
    let n = input.dimension();
    if point.xp.len() > cap {
        return Err(ArrangementError::SubsetExplosion {
            size: point.xp.len(),
            cap,
        });
    }
    let members: Vec<usize> = point.xp.iter().collect();
    let mut out = Vec::new();
    for size in n..=members.len() {
        for combo in members.iter().copied().combinations(size) {
            let subset: IndexSet = combo.into_iter().collect();
            if RatMatrix::from_rows(&input.vectors_at(&subset)).rank() == n {
                out.push(subset);
            }
        }
    }
    Ok(out)
}

/// Witness carried by a negative genericity report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenericityWitness {
    /// A point incident to more than `n` forms.
    FatPoint { point: ArrangementPoint },
    /// Two distinct independent size-`n` subsets solving to the same point.
    SharedPoint {
        first: IndexSet,
        second: IndexSet,
        point: RatVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub generic: bool,
    pub witness: Option<GenericityWitness>,
}

/// Decides whether the parameters are generic: every point is incident to
/// exactly `n` forms, and distinct bases extracted from the list solve to
/// distinct points. In the generic case the decomposition collapses to one
/// term per point.
pub fn is_generic(input: &ArrangementInput) -> GenericityReport {
    let n = input.dimension();
    for point in enumerate_points(input) {
        if point.xp.len() > n {
            return GenericityReport {
                generic: false,
                witness: Some(GenericityWitness::FatPoint { point }),
            };
        }
    }
    let mut by_point: BTreeMap<RatVector, IndexSet> = BTreeMap::new();
    for combo in (0..input.len()).combinations(n) {
        let subset: IndexSet = combo.into_iter().collect();
        if let Ok(p) = solve_point(&input.forms_at(&subset)) {
            if let Some(first) = by_point.get(&p) {
                return GenericityReport {
                    generic: false,
                    witness: Some(GenericityWitness::SharedPoint {
                        first: first.clone(),
                        second: subset,
                        point: p,
                    }),
                };
            }
            by_point.insert(p, subset);
        }
    }
    GenericityReport {
        generic: true,
        witness: None,
    }
}
