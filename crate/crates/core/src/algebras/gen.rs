//! Exhaustive enumeration and seeded random sampling of algebra elements,
//! units, square-zero elements and zero-divisor pairs.

use rand::Rng;

use super::{AlgebraDescriptor, AlgebraElement, AlgebraError, AlgebraKind};
use crate::linalg;
use crate::scalars::{RingDescriptor, Scalar};

/// Lazy exhaustive enumeration of all elements in canonical order (an
/// odometer over free coordinates, last coordinate fastest).
pub struct ElementIter {
    descriptor: AlgebraDescriptor,
    p: u64,
    counter: Vec<u64>,
    done: bool,
}

impl Iterator for ElementIter {
    type Item = AlgebraElement;

    fn next(&mut self) -> Option<AlgebraElement> {
        if self.done {
            return None;
        }
        let coords: Vec<Scalar> = self
            .counter
            .iter()
            .map(|&v| Scalar::from_i64(self.descriptor.ring(), v as i64))
            .collect();
        let el = self.descriptor.from_coords(coords);
        // odometer increment
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < self.p {
                break;
            }
            self.counter[i] = 0;
        }
        Some(el)
    }
}

impl AlgebraDescriptor {
    /// Exhaustive, duplicate-free enumeration of all elements. Requires a
    /// finite scalar ring and an element count within `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<ElementIter, AlgebraError> {
        let p = self
            .ring()
            .size()
            .ok_or(AlgebraError::NotFinite(self.ring()))?;
        let count = self
            .element_count()
            .ok_or_else(|| AlgebraError::TooLarge {
                size: format!("{p}^{}", self.dimension()),
                cap,
            })?;
        if count > cap as u128 {
            return Err(AlgebraError::TooLarge {
                size: count.to_string(),
                cap,
            });
        }
        Ok(ElementIter {
            descriptor: self.clone(),
            p,
            counter: vec![0; self.dimension()],
            done: false,
        })
    }

    /// All units, materialized in enumeration order.
    pub fn enumerate_units(&self, cap: u64) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let mut units = Vec::new();
        for el in self.enumerate_elements(cap)? {
            if el.is_unit()? {
                units.push(el);
            }
        }
        Ok(units)
    }

    /// Exactly the elements with x² = 0 (including zero), by exhaustive scan.
    pub fn square_zero_elements(&self, cap: u64) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let mut out = Vec::new();
        for el in self.enumerate_elements(cap)? {
            if el.mul(&el)?.is_zero() {
                out.push(el);
            }
        }
        Ok(out)
    }

    /// Exactly the pairs (b, c) with b·c = 0 and b ≠ 0, c ≠ 0, by exhaustive
    /// scan.
    pub fn zero_divisor_pairs(
        &self,
        cap: u64,
    ) -> Result<Vec<(AlgebraElement, AlgebraElement)>, AlgebraError> {
        let mut out = Vec::new();
        for b in self.enumerate_elements(cap)? {
            if b.is_zero() {
                continue;
            }
            for c in self.enumerate_elements(cap)? {
                if c.is_zero() {
                    continue;
                }
                if b.mul(&c)?.is_zero() {
                    out.push((b.clone(), c));
                }
            }
        }
        Ok(out)
    }

    fn random_scalar<R: Rng>(&self, rng: &mut R, height: u64) -> Scalar {
        let ring = self.ring();
        match ring {
            RingDescriptor::PrimeField(p) => {
                Scalar::from_i64(ring, rng.random_range(0..p) as i64)
            }
            RingDescriptor::Integers => {
                let h = height as i64;
                Scalar::from_i64(ring, rng.random_range(-h..=h))
            }
            RingDescriptor::Rationals => {
                let h = height as i64;
                let n = rng.random_range(-h..=h);
                let d = rng.random_range(1..=h.max(1));
                Scalar::rational(n, d).expect("positive denominator")
            }
        }
    }

    /// Uniform random element over representable entries: uniform over the
    /// field for GF(p); numerators and denominators bounded by `height`
    /// over ℚ and ℤ.
    pub fn random_element<R: Rng>(&self, rng: &mut R, height: u64) -> AlgebraElement {
        let coords = (0..self.dimension())
            .map(|_| self.random_scalar(rng, height))
            .collect();
        self.from_coords(coords)
    }

    /// Random unit by rejection sampling, up to `retries` rejections.
    pub fn random_unit<R: Rng>(
        &self,
        rng: &mut R,
        height: u64,
        retries: u64,
    ) -> Result<AlgebraElement, AlgebraError> {
        for _ in 0..=retries {
            let el = self.random_element(rng, height);
            if el.is_unit()? {
                return Ok(el);
            }
        }
        Err(AlgebraError::SamplingExhausted {
            retries,
            looking_for: "a unit".into(),
        })
    }

    fn random_strictly_upper<R: Rng>(&self, rng: &mut R, height: u64, n: usize) -> AlgebraElement {
        let mut el = self.zero();
        for i in 0..n {
            for j in (i + 1)..n {
                el.data[i * n + j] = self.random_scalar(rng, height);
            }
        }
        el
    }

    /// Random nonzero element with x² = 0. Matrix kinds first try direct
    /// rejection over strictly upper-triangular draws (which keeps the
    /// support varied), then fall back to halving the power of a nilpotent;
    /// full matrix algebras additionally conjugate by a random unit. Group
    /// algebras use plain rejection over random elements.
    pub fn random_square_zero<R: Rng>(
        &self,
        rng: &mut R,
        height: u64,
        retries: u64,
    ) -> Result<AlgebraElement, AlgebraError> {
        for attempt in 0..=retries {
            let candidate = match &self.kind {
                AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                    let n = *n;
                    let draw = self.random_strictly_upper(rng, height, n);
                    let mut sq = if attempt < 32 {
                        // direct-rejection phase: varied support
                        if !draw.mul(&draw)?.is_zero() {
                            continue;
                        }
                        draw
                    } else {
                        // fallback: least k with x^k = 0 exists (strictly
                        // upper), and the halved power squares to zero
                        let Some(k) = draw.nilpotency_index() else {
                            continue;
                        };
                        draw.pow(k.div_ceil(2) as u64)
                    };
                    if sq.is_zero() {
                        continue;
                    }
                    if matches!(self.kind, AlgebraKind::Matrix(_)) {
                        // spread the support off the triangular pattern
                        let t = self.random_unit(rng, height, retries)?;
                        sq = t.mul(&sq)?.mul(&t.inverse()?)?;
                    }
                    sq
                }
                AlgebraKind::GroupAlgebra(_) => self.random_element(rng, height),
            };
            if !candidate.is_zero() && candidate.mul(&candidate)?.is_zero() {
                return Ok(candidate);
            }
        }
        Err(AlgebraError::SamplingExhausted {
            retries,
            looking_for: "a nonzero square-zero element".into(),
        })
    }

    /// Random pair (b, c) with b·c = 0 and b, c ≠ 0: b is sampled until its
    /// right annihilator is nontrivial, then c is a random element of that
    /// kernel (exact linear algebra, so b·c = 0 holds identically).
    pub fn random_zero_divisor_pair<R: Rng>(
        &self,
        rng: &mut R,
        height: u64,
        retries: u64,
    ) -> Result<(AlgebraElement, AlgebraElement), AlgebraError> {
        if !self.ring().is_field() {
            return Err(AlgebraError::NotAField(self.ring()));
        }
        let dim = self.dimension();
        for _ in 0..=retries {
            let b = self.random_element(rng, height);
            if b.is_zero() {
                continue;
            }
            // right annihilator = kernel of left multiplication by b
            let rep = {
                let mut cols = Vec::with_capacity(dim);
                for k in 0..dim {
                    cols.push(b.mul(&self.basis_element(k))?.coords());
                }
                let mut flat = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    for col in &cols {
                        flat.push(col[i].clone());
                    }
                }
                flat
            };
            let kernel = linalg::kernel_basis(dim, dim, &rep, &self.ring().one(), &self.ring().zero());
            if kernel.is_empty() {
                continue;
            }
            for _ in 0..8 {
                let mut coords = vec![self.ring().zero(); dim];
                for v in &kernel {
                    let w = self.random_scalar(rng, height);
                    for (c, k) in coords.iter_mut().zip(v) {
                        *c = c.add(&w.mul(k).expect("same ring")).expect("same ring");
                    }
                }
                let c = self.from_coords(coords);
                if !c.is_zero() {
                    debug_assert!(b.mul(&c)?.is_zero());
                    return Ok((b, c));
                }
            }
        }
        Err(AlgebraError::SamplingExhausted {
            retries,
            looking_for: "a zero-divisor pair".into(),
        })
    }
}
