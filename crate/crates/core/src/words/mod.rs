//! Free-group words and noncommutative Laurent polynomials, with parsing,
//! substitutions, exponent-sum analysis, and evaluation on algebra elements.

mod parse;

pub use parse::{parse_poly, parse_word, ParseError};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebras::{AlgebraElement, AlgebraError};
use crate::scalars::{RingDescriptor, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("x{variable} must be a unit (word {word}): {element} is not invertible")]
    NotAUnit {
        variable: u32,
        word: String,
        element: String,
    },
    #[error("no element assigned to x{0}")]
    MissingAssignment(u32),
    #[error(transparent)]
    RingMismatch(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A reduced word in a free group on generators x1, x2, …
///
/// Stored as syllables `(variable, exponent)` with adjacent syllables on
/// distinct variables and no zero exponents; the empty list is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    syllables: Vec<(u32, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(variable: u32) -> Self {
        Self::power(variable, 1)
    }

    pub fn power(variable: u32, exponent: i64) -> Self {
        assert!(variable >= 1, "variables are indexed from 1");
        if exponent == 0 {
            GroupWord::identity()
        } else {
            GroupWord {
                syllables: vec![(variable, exponent)],
            }
        }
    }

    /// Builds a word from arbitrary syllables, reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = (u32, i64)>>(syllables: I) -> Self {
        let mut stack: Vec<(u32, i64)> = Vec::new();
        for (v, e) in syllables {
            assert!(v >= 1, "variables are indexed from 1");
            push_reduced(&mut stack, v, e);
        }
        GroupWord { syllables: stack }
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Geodesic length: the sum of |exponent| over syllables.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut stack = self.syllables.clone();
        for &(v, e) in &other.syllables {
            push_reduced(&mut stack, v, e);
        }
        GroupWord { syllables: stack }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            syllables: self.syllables.iter().rev().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    /// Sum of exponents of the named variable.
    pub fn exp_sum(&self, variable: u32) -> i64 {
        self.syllables
            .iter()
            .filter(|(v, _)| *v == variable)
            .map(|&(_, e)| e as i128)
            .sum::<i128>()
            .try_into()
            .expect("exponent sum overflow")
    }

    /// Sum of exponents over all variables.
    pub fn total_exp_sum(&self) -> i64 {
        self.syllables
            .iter()
            .map(|&(_, e)| e as i128)
            .sum::<i128>()
            .try_into()
            .expect("exponent sum overflow")
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.syllables.iter().map(|(v, _)| *v).collect()
    }

    /// Multiplies every exponent of `variable` by `k` (k ≥ 1), re-reducing.
    pub fn substitute_power(&self, variable: u32, k: i64) -> GroupWord {
        assert!(k >= 1);
        GroupWord::from_syllables(self.syllables.iter().map(|&(v, e)| {
            if v == variable {
                (v, e.checked_mul(k).expect("exponent overflow"))
            } else {
                (v, e)
            }
        }))
    }

    /// Rewrites each syllable xᵢᵉ as x1⁻ⁱ·x2ᵉ·x1ⁱ, so the result uses at most
    /// the two variables x1 (the conjugator) and x2.
    pub fn reduce_to_two_variables(&self) -> GroupWord {
        let mut out = GroupWord::identity();
        for &(v, e) in &self.syllables {
            let i = v as i64;
            let conj = GroupWord::from_syllables([(1, -i), (2, e), (1, i)]);
            out = out.multiply(&conj);
        }
        out
    }

    /// Evaluates the word at an assignment of algebra elements, with
    /// inverses looked up in `inverses` (computed lazily by the caller).
    fn evaluate_with(
        &self,
        assignment: &BTreeMap<u32, AlgebraElement>,
        inverses: &mut BTreeMap<u32, AlgebraElement>,
    ) -> Result<AlgebraElement, EvalError> {
        let mut acc: Option<AlgebraElement> = None;
        for &(v, e) in &self.syllables {
            let base = if e >= 0 {
                assignment
                    .get(&v)
                    .ok_or(EvalError::MissingAssignment(v))?
                    .clone()
            } else {
                match inverses.get(&v) {
                    Some(inv) => inv.clone(),
                    None => {
                        let elem = assignment
                            .get(&v)
                            .ok_or(EvalError::MissingAssignment(v))?;
                        let inv = elem.inverse().map_err(|_| EvalError::NotAUnit {
                            variable: v,
                            word: self.to_string(),
                            element: elem.to_string(),
                        })?;
                        inverses.insert(v, inv.clone());
                        inv
                    }
                }
            };
            let factor = base.pow(e.unsigned_abs());
            acc = Some(match acc {
                None => factor,
                Some(prev) => prev.mul(&factor)?,
            });
        }
        match acc {
            Some(x) => Ok(x),
            None => {
                // identity word: need some assigned element to know the algebra
                let any = assignment
                    .values()
                    .next()
                    .ok_or(EvalError::MissingAssignment(1))?;
                Ok(any.descriptor().one())
            }
        }
    }

    /// Evaluates the word at an assignment (entry point for group-identity
    /// checks; negative exponents require units).
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<u32, AlgebraElement>,
    ) -> Result<AlgebraElement, EvalError> {
        let mut inverses = BTreeMap::new();
        self.evaluate_with(assignment, &mut inverses)
    }
}

fn push_reduced(stack: &mut Vec<(u32, i64)>, v: u32, e: i64) {
    if e == 0 {
        return;
    }
    match stack.last_mut() {
        Some((tv, te)) if *tv == v => {
            *te = te.checked_add(e).expect("exponent overflow");
            if *te == 0 {
                stack.pop();
            }
        }
        _ => stack.push((v, e)),
    }
}

/// Canonical order: by geodesic length, then lexicographically by syllable
/// (variable, exponent). Gives deterministic printing and reports.
impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A noncommutative Laurent polynomial: a finite map from reduced group
/// words to nonzero exact scalars, all over one ring. The coefficient of
/// the empty word is the constant term. An empty map represents zero
/// (arithmetic may produce it; the parser rejects it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    ring: RingDescriptor,
    terms: BTreeMap<GroupWord, Scalar>,
}

impl LaurentPolynomial {
    pub fn zero(ring: RingDescriptor) -> Self {
        LaurentPolynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(scalar: Scalar) -> Self {
        let mut p = Self::zero(scalar.ring());
        p.add_term(GroupWord::identity(), scalar);
        p
    }

    /// The LPI form `1 - w` of a group identity `w = 1`.
    pub fn one_minus_word(ring: RingDescriptor, w: &GroupWord) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(GroupWord::identity(), ring.one());
        p.add_term(w.clone(), ring.one().neg());
        p
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<GroupWord, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&GroupWord::identity())
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coefficient(&self, word: &GroupWord) -> Scalar {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `coeff · word`, merging like terms and dropping zeros.
    pub fn add_term(&mut self, word: GroupWord, coeff: Scalar) {
        assert_eq!(coeff.ring(), self.ring, "coefficient ring mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff).expect("same ring");
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.ring, other.ring);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPolynomial {
        LaurentPolynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.ring, other.ring);
        let mut out = LaurentPolynomial::zero(self.ring);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.multiply(wb), ca.mul(cb).expect("same ring"));
            }
        }
        out
    }

    /// Right-multiplies every term by `w`.
    pub fn mul_word(&self, w: &GroupWord) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.ring);
        for (word, c) in &self.terms {
            out.add_term(word.multiply(w), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.ring);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(s).expect("same ring"));
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|w| w.variables()).collect()
    }

    /// Re-coefficients the polynomial into `target` along the canonical
    /// scalar embedding.
    pub fn embed(&self, target: RingDescriptor) -> Result<LaurentPolynomial, ScalarError> {
        let mut out = LaurentPolynomial::zero(target);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.embed(target)?);
        }
        Ok(out)
    }

    /// Applies xᵥ ↦ xᵥᵏ to every term.
    pub fn substitute_power(&self, variable: u32, k: i64) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.ring);
        for (w, c) in &self.terms {
            out.add_term(w.substitute_power(variable, k), c.clone());
        }
        out
    }

    /// Replaces each variable xᵢ by x1⁻ⁱ·x2·x1ⁱ so the polynomial is in at
    /// most two variables.
    pub fn reduce_to_two_variables(&self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.ring);
        for (w, c) in &self.terms {
            out.add_term(w.reduce_to_two_variables(), c.clone());
        }
        out
    }

    /// Checks the admissibility hypothesis: every nonconstant word must have
    /// nonzero exponent sum in at least one variable. Returns the offenders.
    pub fn admissibility(&self) -> Admissibility {
        let offenders: Vec<GroupWord> = self
            .terms
            .keys()
            .filter(|w| {
                !w.is_identity() && w.variables().iter().all(|&v| w.exp_sum(v) == 0)
            })
            .cloned()
            .collect();
        Admissibility {
            admissible: offenders.is_empty(),
            offenders,
        }
    }

    /// Evaluates the polynomial at an assignment of algebra elements. The
    /// constant term multiplies the algebra identity; any element raised to
    /// a negative exponent anywhere in the support must be a unit.
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<u32, AlgebraElement>,
    ) -> Result<AlgebraElement, EvalError> {
        let descriptor = assignment
            .values()
            .next()
            .ok_or(EvalError::MissingAssignment(1))?
            .descriptor()
            .clone();
        for v in self.variables() {
            if !assignment.contains_key(&v) {
                return Err(EvalError::MissingAssignment(v));
            }
        }
        let poly = if self.ring == descriptor.ring() {
            self.clone()
        } else {
            self.embed(descriptor.ring())?
        };
        let mut inverses = BTreeMap::new();
        let mut acc = descriptor.zero();
        for (w, c) in &poly.terms {
            let value = w.evaluate_with(assignment, &mut inverses)?;
            acc = acc.add(&value.scalar_mul(c)?)?;
        }
        Ok(acc)
    }
}

/// Result of the admissibility check, with per-word diagnosis.
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub admissible: bool,
    pub offenders: Vec<GroupWord>,
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            // fold the sign into the separator over signed rings
            let (sep, mag) = match c {
                Scalar::Mod { .. } => ("+", c.clone()),
                _ => {
                    if format!("{c}").starts_with('-') {
                        ("-", c.neg())
                    } else {
                        ("+", c.clone())
                    }
                }
            };
            if first {
                if sep == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sep} ")?;
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}
