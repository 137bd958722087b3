//! Sparse multivariate polynomials over exact rationals.
//!
//! The carrier for affine forms, cleared-denominator products, and the
//! per-point polynomial coefficients. Terms live in a `BTreeMap` keyed by
//! exponent vector, so the representation is canonical (no zero
//! coefficients, deterministic iteration) and equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_linear::{AffineForm, Rat, RatVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
}

/// Sparse polynomial in `n_vars` variables with nonzero exact rational
/// coefficients. The zero polynomial is the empty term map.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rat::one())
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(vec![0; n_vars], c);
        p
    }

    /// The monomial `x_i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(exps, Rat::one());
        p
    }

    /// Embeds an affine form as the degree-<=1 polynomial `Σ a_j·x_j + mu`.
    pub fn from_form(f: &AffineForm) -> Self {
        let n = f.dim();
        let mut p = Self::zero(n);
        for (j, a) in f.vector.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[j] = 1;
            p.add_term(exps, a.clone());
        }
        p.add_term(vec![0; n], f.mu.clone());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0u32; self.n_vars].as_slice())
                .is_some_and(Rat::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        debug_assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.n_vars != other.n_vars {
            return Err(PolyError::DimensionMismatch {
                left: self.n_vars,
                right: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_dims(other)?;
        let mut out = MultiPoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &RatVector) -> Result<Rat, PolyError> {
        if point.dim() != self.n_vars {
            return Err(PolyError::DimensionMismatch {
                left: self.n_vars,
                right: point.dim(),
            });
        }
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= &point[i].pow(e);
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Terms in graded-lexicographic order, highest degree first. This is
    /// the order used by both the text rendering and the JSON records.
    pub fn ordered_terms(&self) -> Vec<(&[u32], &Rat)> {
        let mut terms: Vec<(&[u32], &Rat)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.as_slice(), c))
            .collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        terms
    }
}

/// Exact expanded product `∏ (⟨a_i|x⟩ + mu_i)`; the empty list gives the
/// constant 1.
pub fn product_of_forms(n_vars: usize, forms: &[AffineForm]) -> Result<MultiPoly, PolyError> {
    let mut acc = MultiPoly::one(n_vars);
    for f in forms {
        if f.dim() != n_vars {
            return Err(PolyError::DimensionMismatch {
                left: n_vars,
                right: f.dim(),
            });
        }
        acc = acc.mul(&MultiPoly::from_form(f))?;
    }
    Ok(acc)
}

fn fmt_monomial(exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{i}")),
            _ => parts.push(format!("x{i}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Renders terms in graded-lex order with variables `x0..x{n-1}`,
    /// e.g. `x0^2*x1 - 2*x0 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.ordered_terms().into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(exps);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MultiPoly {
    /// A list of `{"exponents": [...], "coefficient": "p/q"}` records in
    /// graded-lex order.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRecord<'a> {
            exponents: &'a [u32],
            coefficient: &'a Rat,
        }
        let ordered = self.ordered_terms();
        let mut seq = serializer.serialize_seq(Some(ordered.len()))?;
        for (exponents, coefficient) in ordered {
            seq.serialize_element(&TermRecord {
                exponents,
                coefficient,
            })?;
        }
        seq.end()
    }
}
