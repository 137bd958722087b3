//! Exact rational scalars, vectors, and matrices.
//!
//! Everything downstream (polynomials, point enumeration, the decomposition
//! itself) runs on these types. All arithmetic is over arbitrary-precision
//! rationals; there is no floating point anywhere, because the algorithm
//! branches on exact zero tests. Elimination pivots on the first nonzero
//! entry in index order, so every operation is deterministic.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearError {
    #[error("vectors do not span {expected}-space (rank {rank})")]
    NotSpanning { expected: usize, rank: usize },
    #[error("singular system: the supplied vectors are linearly dependent")]
    SingularSystem,
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Exact rational scalar in canonical form: positive denominator and
/// `gcd(|numerator|, denominator) = 1`. Values are immutable; arithmetic
/// returns new values and never rounds.
///
/// Serializes as the string `"p/q"`, or `"p"` when the denominator is 1,
/// with the sign on the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den` in canonical form.
    ///
    /// Panics when `den == 0`; intended for literals in code and tests.
    /// Parsed input goes through [`Rat::from_str`], which reports errors.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational denominator must be nonzero");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational denominator must be nonzero");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num_str
            .trim()
            .parse()
            .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
        let den: BigInt = match den_str {
            Some(d) => d
                .trim()
                .parse()
                .map_err(|_| format!("invalid rational denominator in {s:?}"))?,
            None => BigInt::one(),
        };
        if den <= BigInt::zero() {
            return Err(format!(
                "rational denominator must be positive in {s:?}; put the sign on the numerator"
            ));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 = &self.0 * &rhs.0;
    }
}

/// Fixed-length coordinate vector of exact rationals. Doubles as a vector
/// `a` of a form and as a point `p` of the dual space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVector(Vec<Rat>);

impl RatVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        RatVector(vec![Rat::zero(); n])
    }

    /// Convenience for integer-entry vectors in code and tests.
    pub fn from_ints(coords: &[i64]) -> Self {
        RatVector(coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Inner product. Panics on mismatched dimensions; callers validate
    /// dimensions at the input boundary.
    pub fn dot(&self, other: &RatVector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        let mut acc = Rat::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += &(a * b);
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> RatVector {
        RatVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim());
        RatVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim());
        RatVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for RatVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Affine-linear form `p ↦ ⟨vector|p⟩ + mu`. Its zero set is a hyperplane
/// whenever `vector` is nonzero (enforced at arrangement validation, not
/// at construction).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineForm {
    pub vector: RatVector,
    pub mu: Rat,
}

impl AffineForm {
    pub fn new(vector: RatVector, mu: Rat) -> Self {
        AffineForm { vector, mu }
    }

    /// Form with integer coefficients, for code and tests.
    pub fn from_ints(vector: &[i64], mu: i64) -> Self {
        AffineForm {
            vector: RatVector::from_ints(vector),
            mu: Rat::from_int(mu),
        }
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// Evaluates `⟨vector|p⟩ + mu` exactly.
    pub fn eval(&self, p: &RatVector) -> Rat {
        &self.vector.dot(p) + &self.mu
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineForm({:?} | mu = {})", self.vector, self.mu)
    }
}

/// Dense row-major matrix of exact rationals. Carrier for the rank and
/// solve computations; not part of any serialized surface.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[RatVector]) -> Self {
        let cols = rows.first().map(RatVector::dim).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            entries.extend(r.iter().cloned());
        }
        RatMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact rank over the rationals by Gaussian elimination. Pivot is the
    /// first nonzero entry in index order.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(r) = found else { continue };
            m.swap_rows(pivot_row, r);
            for below in pivot_row + 1..m.rows {
                if m.at(below, col).is_zero() {
                    continue;
                }
                let factor = m.at(below, col) / m.at(pivot_row, col);
                for c in col..m.cols {
                    let v = m.at(below, c) - &(&factor * m.at(pivot_row, c));
                    m.set(below, c, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Solves the square system `A x = rhs` by Gauss-Jordan elimination with
/// first-nonzero pivoting.
fn solve_square(a: &RatMatrix, rhs: &[Rat]) -> Result<Vec<Rat>, LinearError> {
    let n = a.rows();
    assert_eq!(a.cols(), n);
    assert_eq!(rhs.len(), n);
    // Augmented [A | rhs].
    let mut m = RatMatrix::zero(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, a.at(r, c).clone());
        }
        m.set(r, n, rhs[r].clone());
    }
    for col in 0..n {
        let found = (col..n).find(|&r| !m.at(r, col).is_zero());
        let Some(r) = found else {
            return Err(LinearError::SingularSystem);
        };
        m.swap_rows(col, r);
        let pivot = m.at(col, col).clone();
        for c in col..=n {
            let v = m.at(col, c) / &pivot;
            m.set(col, c, v);
        }
        for other in 0..n {
            if other == col || m.at(other, col).is_zero() {
                continue;
            }
            let factor = m.at(other, col).clone();
            for c in col..=n {
                let v = m.at(other, c) - &(&factor * m.at(col, c));
                m.set(other, c, v);
            }
        }
    }
    Ok((0..n).map(|r| m.at(r, n).clone()).collect())
}

/// Greedy lowest-index spanning subset: scans the vectors in order and keeps
/// each one that enlarges the span, stopping at `n` picks. The result is the
/// lexicographically-first size-`n` independent index subset, so equal inputs
/// always yield equal outputs.
pub fn extract_spanning_basis(vectors: &[RatVector], n: usize) -> Result<Vec<usize>, LinearError> {
    // Incremental elimination: keep reduced rows together with their pivot column.
    let mut reduced: Vec<(usize, RatVector)> = Vec::with_capacity(n);
    let mut picked = Vec::with_capacity(n);
    for (i, v) in vectors.iter().enumerate() {
        if picked.len() == n {
            break;
        }
        assert_eq!(v.dim(), n, "vector length must equal the ambient dimension");
        let mut w = v.clone();
        for (pivot_col, row) in &reduced {
            if !w[*pivot_col].is_zero() {
                let factor = &w[*pivot_col] / &row[*pivot_col];
                w = w.sub(&row.scale(&factor));
            }
        }
        if let Some(pivot_col) = (0..n).find(|&c| !w[c].is_zero()) {
            reduced.push((pivot_col, w));
            picked.push(i);
        }
    }
    if picked.len() < n {
        return Err(LinearError::NotSpanning {
            expected: n,
            rank: picked.len(),
        });
    }
    Ok(picked)
}

/// Unique common zero of `n` affine forms with independent vectors: the point
/// `p` with `⟨a_i|p⟩ + mu_i = 0` for every supplied form.
pub fn solve_point(basis_forms: &[AffineForm]) -> Result<RatVector, LinearError> {
    let n = basis_forms.len();
    if n == 0 {
        return Err(LinearError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    for f in basis_forms {
        if f.dim() != n {
            return Err(LinearError::DimensionMismatch {
                expected: n,
                got: f.dim(),
            });
        }
    }
    let a = RatMatrix::from_rows(
        &basis_forms
            .iter()
            .map(|f| f.vector.clone())
            .collect::<Vec<_>>(),
    );
    let rhs: Vec<Rat> = basis_forms.iter().map(|f| -&f.mu).collect();
    let coords = solve_square(&a, &rhs)?;
    Ok(RatVector::new(coords))
}

/// Coordinates of `z` over an independent basis: returns `d` with
/// `z = Σ d_i · basis_i` exactly.
pub fn express(z: &RatVector, basis: &[RatVector]) -> Result<Vec<Rat>, LinearError> {
    let n = z.dim();
    if basis.len() != n {
        return Err(LinearError::DimensionMismatch {
            expected: n,
            got: basis.len(),
        });
    }
    for b in basis {
        if b.dim() != n {
            return Err(LinearError::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
    }
    // Columns of the system matrix are the basis vectors.
    let mut a = RatMatrix::zero(n, n);
    for (j, b) in basis.iter().enumerate() {
        for r in 0..n {
            a.set(r, j, b[r].clone());
        }
    }
    let rhs: Vec<Rat> = z.iter().cloned().collect();
    solve_square(&a, &rhs)
}
