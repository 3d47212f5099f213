//! Polynomial arithmetic in the free monoid on letters {a, b, u} modulo the
//! rewriting rules aa → 0 and bb → 0.
//!
//! Every stored monomial is clean (contains no aa or bb), so a product can
//! only die at the junction of its two factors.

use std::collections::BTreeMap;

use crate::scalars::{RingDescriptor, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Letter {
    A,
    B,
    U,
}

impl Letter {
    fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::U => 'u',
        }
    }
}

pub(crate) type Monomial = Vec<Letter>;

pub(crate) fn monomial_string(m: &Monomial) -> String {
    m.iter().map(|l| l.symbol()).collect()
}

/// A finite scalar combination of clean monomials.
#[derive(Debug, Clone)]
pub(crate) struct MonoidPoly {
    ring: RingDescriptor,
    pub(crate) terms: BTreeMap<Monomial, Scalar>,
}

impl MonoidPoly {
    pub fn zero(ring: RingDescriptor) -> Self {
        MonoidPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::monomial(ring, Vec::new())
    }

    pub fn monomial(ring: RingDescriptor, m: Monomial) -> Self {
        debug_assert!(is_clean(&m));
        let mut p = Self::zero(ring);
        p.terms.insert(m, ring.one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("same ring");
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MonoidPoly, scale: &Scalar) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul(scale).expect("same ring"));
        }
    }

    pub fn mul(&self, other: &MonoidPoly) -> MonoidPoly {
        let mut out = MonoidPoly::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // both factors are clean, so only the junction can violate
                if let (Some(&last), Some(&first)) = (m1.last(), m2.first()) {
                    if last == first && last != Letter::U {
                        continue;
                    }
                }
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                out.add_term(m, c1.mul(c2).expect("same ring"));
            }
        }
        out
    }
}

pub(crate) fn is_clean(m: &Monomial) -> bool {
    m.windows(2)
        .all(|w| w[0] != w[1] || w[0] == Letter::U)
}

/// The unit α = (1 + aua)(1 + bauab) = 1 + aua + bauab + auabauab.
pub(crate) fn alpha(ring: RingDescriptor) -> MonoidPoly {
    use Letter::{A, B, U};
    let one = MonoidPoly::one(ring);
    let aua = MonoidPoly::monomial(ring, vec![A, U, A]);
    let bauab = MonoidPoly::monomial(ring, vec![B, A, U, A, B]);
    let mut left = one.clone();
    left.add_scaled(&aua, &ring.one());
    let mut right = one;
    right.add_scaled(&bauab, &ring.one());
    left.mul(&right)
}

/// If `m` = (abau)^j for some j ≥ 1, returns j.
pub(crate) fn power_of_abau(m: &Monomial) -> Option<usize> {
    use Letter::{A, B, U};
    if m.is_empty() || !m.len().is_multiple_of(4) {
        return None;
    }
    for chunk in m.chunks(4) {
        if chunk != [A, B, A, U] {
            return None;
        }
    }
    Some(m.len() / 4)
}
