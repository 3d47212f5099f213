//! Concrete finite-dimensional algebras over exact scalars: full matrix
//! algebras Mₙ(K), upper-triangular algebras Tₙ(K), and group algebras K[G]
//! of finite groups, with exact unit testing, enumeration, sampling, and the
//! special-element searches the identity machinery needs.

mod gen;

pub use gen::ElementIter;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::groups::{FiniteGroup, GroupError};
use crate::linalg;
use crate::scalars::{RingDescriptor, Scalar, ScalarError};

/// Default cap on exhaustive element enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;
/// Default retry budget for rejection sampling.
pub const DEFAULT_RETRIES: u64 = 10_000;
/// Default height bound for random rationals and integers.
pub const DEFAULT_HEIGHT: u64 = 5;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    DescriptorMismatch,
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("unit test requires a field, got {0}")]
    NotAField(RingDescriptor),
    #[error("enumeration needs a finite scalar ring, got {0}")]
    NotFinite(RingDescriptor),
    #[error("algebra too large: {size} elements exceeds cap {cap}")]
    TooLarge { size: String, cap: u64 },
    #[error("sampling exhausted after {retries} rejections: {looking_for}")]
    SamplingExhausted { retries: u64, looking_for: String },
    #[error("element order {order} is not invertible over {ring}")]
    OrderNotInvertible { order: usize, ring: RingDescriptor },
    #[error("operation requires a group algebra")]
    NotAGroupAlgebra,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid algebra spec `{spec}`: {message}")]
    SpecSyntax { spec: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which algebra: full matrices, upper-triangular matrices, or a group
/// algebra over a validated finite group.
#[derive(Debug, Clone)]
pub enum AlgebraKind {
    Matrix(usize),
    Triangular(usize),
    GroupAlgebra(Arc<FiniteGroup>),
}

impl PartialEq for AlgebraKind {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AlgebraKind::Matrix(a), AlgebraKind::Matrix(b)) => a == b,
            (AlgebraKind::Triangular(a), AlgebraKind::Triangular(b)) => a == b,
            (AlgebraKind::GroupAlgebra(g), AlgebraKind::GroupAlgebra(h)) => {
                Arc::ptr_eq(g, h) || g == h
            }
            _ => false,
        }
    }
}

impl Eq for AlgebraKind {}

/// An algebra descriptor: the kind plus the exact scalar ring. Cheap to
/// clone (the group table is shared).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    kind: AlgebraKind,
    ring: RingDescriptor,
}

impl AlgebraDescriptor {
    pub fn matrix(n: usize, ring: RingDescriptor) -> Self {
        assert!(n >= 1);
        AlgebraDescriptor {
            kind: AlgebraKind::Matrix(n),
            ring,
        }
    }

    pub fn triangular(n: usize, ring: RingDescriptor) -> Self {
        assert!(n >= 1);
        AlgebraDescriptor {
            kind: AlgebraKind::Triangular(n),
            ring,
        }
    }

    pub fn group_algebra(group: Arc<FiniteGroup>, ring: RingDescriptor) -> Self {
        AlgebraDescriptor {
            kind: AlgebraKind::GroupAlgebra(group),
            ring,
        }
    }

    /// Parses the algebra spec grammar: `matrix:<n>:<ring>`, `tri:<n>:<ring>`,
    /// `grpalg:<groupspec>:<ring>` (the group spec may itself contain `:`).
    pub fn parse(spec: &str, max_order: usize) -> Result<Self, AlgebraError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bail = |message: &str| {
            Err(AlgebraError::SpecSyntax {
                spec: spec.to_string(),
                message: message.to_string(),
            })
        };
        if parts.len() < 3 {
            return bail("expected <kind>:<param>:<ring>");
        }
        let ring = RingDescriptor::parse(parts[parts.len() - 1])?;
        let param = parts[1..parts.len() - 1].join(":");
        match parts[0] {
            "matrix" | "tri" => {
                let n: usize = match param.parse() {
                    Ok(n) if n >= 1 => n,
                    _ => return bail("matrix size must be a positive integer"),
                };
                Ok(if parts[0] == "matrix" {
                    Self::matrix(n, ring)
                } else {
                    Self::triangular(n, ring)
                })
            }
            "grpalg" => {
                let group = crate::groups::parse_group_spec(&param, max_order)?;
                Ok(Self::group_algebra(Arc::new(group), ring))
            }
            _ => bail("unknown algebra kind (expected matrix, tri, or grpalg)"),
        }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn group(&self) -> Result<&Arc<FiniteGroup>, AlgebraError> {
        match &self.kind {
            AlgebraKind::GroupAlgebra(g) => Ok(g),
            _ => Err(AlgebraError::NotAGroupAlgebra),
        }
    }

    /// Length of the dense data vector backing an element.
    fn data_len(&self) -> usize {
        match &self.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => n * n,
            AlgebraKind::GroupAlgebra(g) => g.order(),
        }
    }

    /// Number of free coordinates (the K-dimension of the algebra).
    pub fn dimension(&self) -> usize {
        match &self.kind {
            AlgebraKind::Matrix(n) => n * n,
            AlgebraKind::Triangular(n) => n * (n + 1) / 2,
            AlgebraKind::GroupAlgebra(g) => g.order(),
        }
    }

    /// Any nilpotent element x satisfies x^bound = 0.
    pub fn nilpotency_bound(&self) -> usize {
        match &self.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => *n,
            AlgebraKind::GroupAlgebra(g) => g.order(),
        }
    }

    /// Positions of the free coordinates inside the dense data vector.
    fn free_positions(&self) -> Vec<usize> {
        match &self.kind {
            AlgebraKind::Matrix(n) => (0..n * n).collect(),
            AlgebraKind::Triangular(n) => {
                let n = *n;
                (0..n)
                    .flat_map(move |i| (i..n).map(move |j| i * n + j))
                    .collect()
            }
            AlgebraKind::GroupAlgebra(g) => (0..g.order()).collect(),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            descriptor: self.clone(),
            data: vec![self.ring.zero(); self.data_len()],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        let mut el = self.zero();
        match &self.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                for i in 0..*n {
                    el.data[i * n + i] = self.ring.one();
                }
            }
            AlgebraKind::GroupAlgebra(_) => {
                el.data[0] = self.ring.one();
            }
        }
        el
    }

    /// The k-th basis element (matrix units in row-major order restricted to
    /// the free positions; group elements for a group algebra).
    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        let mut el = self.zero();
        let pos = self.free_positions()[k];
        el.data[pos] = self.ring.one();
        el
    }

    /// Full spanning set. Centrality against this set is centrality in the
    /// algebra.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dimension()).map(|k| self.basis_element(k)).collect()
    }

    /// The matrix unit e_{ij} (1-based would be ambiguous; indices are
    /// 0-based here).
    pub fn matrix_unit(&self, i: usize, j: usize) -> Result<AlgebraElement, AlgebraError> {
        match &self.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                if i >= *n || j >= *n {
                    return Err(AlgebraError::InvalidElement(format!(
                        "matrix unit ({i},{j}) out of range for size {n}"
                    )));
                }
                if matches!(self.kind, AlgebraKind::Triangular(_)) && j < i {
                    return Err(AlgebraError::InvalidElement(format!(
                        "matrix unit ({i},{j}) lies below the diagonal"
                    )));
                }
                let mut el = self.zero();
                el.data[i * n + j] = self.ring.one();
                Ok(el)
            }
            AlgebraKind::GroupAlgebra(_) => Err(AlgebraError::InvalidElement(
                "matrix units are not defined in a group algebra".into(),
            )),
        }
    }

    /// The image of the group element g inside K[G].
    pub fn group_basis(&self, g: usize) -> Result<AlgebraElement, AlgebraError> {
        let group = self.group()?;
        if g >= group.order() {
            return Err(AlgebraError::InvalidElement(format!(
                "group index {g} out of range"
            )));
        }
        let mut el = self.zero();
        el.data[g] = self.ring.one();
        Ok(el)
    }

    /// Builds an element from its free coordinates.
    pub fn from_coords(&self, coords: Vec<Scalar>) -> AlgebraElement {
        let positions = self.free_positions();
        assert_eq!(coords.len(), positions.len());
        let mut el = self.zero();
        for (pos, c) in positions.into_iter().zip(coords) {
            assert_eq!(c.ring(), self.ring);
            el.data[pos] = c;
        }
        el
    }

    /// Builds an element from dense integer entries (row-major for matrix
    /// kinds, group-indexed for group algebras).
    pub fn element_from_i64(&self, entries: &[i64]) -> Result<AlgebraElement, AlgebraError> {
        if entries.len() != self.data_len() {
            return Err(AlgebraError::InvalidElement(format!(
                "expected {} entries, got {}",
                self.data_len(),
                entries.len()
            )));
        }
        let data: Vec<Scalar> = entries
            .iter()
            .map(|&v| Scalar::from_i64(self.ring, v))
            .collect();
        let el = AlgebraElement {
            descriptor: self.clone(),
            data,
        };
        el.validate()?;
        Ok(el)
    }

    /// Number of elements when the scalar ring is finite: p^dimension.
    pub fn element_count(&self) -> Option<u128> {
        let p = self.ring.size()? as u128;
        p.checked_pow(self.dimension() as u32)
    }

    /// The averaging idempotent of a group element g of order n:
    /// n⁻¹·(1 + g + g² + … + gⁿ⁻¹). Requires n invertible in the ring.
    pub fn averaging_idempotent(&self, g: usize) -> Result<AlgebraElement, AlgebraError> {
        let group = self.group()?.clone();
        let n = group.order_of(g);
        let n_scalar = Scalar::from_i64(self.ring, n as i64);
        let n_inv = n_scalar
            .invert()
            .map_err(|_| AlgebraError::OrderNotInvertible {
                order: n,
                ring: self.ring,
            })?;
        let mut el = self.zero();
        let mut x = group.identity();
        for _ in 0..n {
            el.data[x] = el.data[x].add(&n_inv)?;
            x = group.mul(x, g);
        }
        Ok(el)
    }

    /// Semiprimeness of a group algebra: automatic in characteristic zero;
    /// in characteristic p, equivalent to the FC-subgroup having no
    /// p-torsion (for a finite group, to p ∤ |G|).
    pub fn semiprime_group_algebra(&self) -> Result<SemiprimeReport, AlgebraError> {
        let group = self.group()?;
        let p = self.ring.characteristic();
        if p == 0 {
            return Ok(SemiprimeReport {
                semiprime: true,
                reason: SemiprimeReason::CharZero,
            });
        }
        let fc = group.fc_subgroup();
        let torsion = fc
            .iter()
            .find(|&&g| (group.order_of(g) as u64).is_multiple_of(p))
            .copied();
        match torsion {
            None => Ok(SemiprimeReport {
                semiprime: true,
                reason: SemiprimeReason::FcIsPPrime { p },
            }),
            Some(witness) => Ok(SemiprimeReport {
                semiprime: false,
                reason: SemiprimeReason::FcHasPTorsion {
                    p,
                    witness,
                    witness_order: group.order_of(witness),
                },
            }),
        }
    }
}

/// Why a group algebra is or is not semiprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiprimeReason {
    /// Characteristic zero: K[G] is always semiprime.
    CharZero,
    /// Characteristic p with no p-torsion in the FC-subgroup.
    FcIsPPrime { p: u64 },
    /// Characteristic p divides the order of an FC element.
    FcHasPTorsion {
        p: u64,
        witness: usize,
        witness_order: usize,
    },
}

impl fmt::Display for SemiprimeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiprimeReason::CharZero => {
                write!(f, "characteristic zero: the group algebra is semiprime")
            }
            SemiprimeReason::FcIsPPrime { p } => write!(
                f,
                "characteristic {p}: the FC-subgroup is a {p}'-group, so the group algebra is semiprime"
            ),
            SemiprimeReason::FcHasPTorsion { p, witness, witness_order } => write!(
                f,
                "characteristic {p}: FC element {witness} has order {witness_order} divisible by {p}, so the group algebra is not semiprime"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeReport {
    pub semiprime: bool,
    pub reason: SemiprimeReason,
}

/// An element of a concrete algebra: a dense scalar matrix (row-major) or a
/// scalar vector indexed by group elements. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    descriptor: AlgebraDescriptor,
    data: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.descriptor
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    /// Matrix entry (i, j); only meaningful for matrix kinds.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        match self.descriptor.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => &self.data[i * n + j],
            AlgebraKind::GroupAlgebra(_) => panic!("entry() on a group algebra element"),
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for s in &self.data {
            if s.ring() != self.descriptor.ring {
                return Err(AlgebraError::InvalidElement(format!(
                    "entry over {} in an algebra over {}",
                    s.ring(),
                    self.descriptor.ring
                )));
            }
        }
        if let AlgebraKind::Triangular(n) = self.descriptor.kind {
            for i in 0..n {
                for j in 0..i {
                    if !self.data[i * n + j].is_zero() {
                        return Err(AlgebraError::InvalidElement(format!(
                            "nonzero entry ({i},{j}) below the diagonal"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.descriptor
            .free_positions()
            .into_iter()
            .map(|p| self.data[p].clone())
            .collect()
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.descriptor == other.descriptor {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_same(other)?;
        let data: Result<Vec<Scalar>, ScalarError> = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(AlgebraElement {
            descriptor: self.descriptor.clone(),
            data: data?,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            descriptor: self.descriptor.clone(),
            data: self.data.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Result<AlgebraElement, AlgebraError> {
        let data: Result<Vec<Scalar>, ScalarError> =
            self.data.iter().map(|a| a.mul(s)).collect();
        Ok(AlgebraElement {
            descriptor: self.descriptor.clone(),
            data: data?,
        })
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_same(other)?;
        let ring = self.descriptor.ring;
        let data = match &self.descriptor.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                let n = *n;
                let mut out = vec![ring.zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        let a = &self.data[i * n + k];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let b = &other.data[k * n + j];
                            if b.is_zero() {
                                continue;
                            }
                            out[i * n + j] = out[i * n + j].add(&a.mul(b)?)?;
                        }
                    }
                }
                out
            }
            AlgebraKind::GroupAlgebra(g) => {
                // convolution through the multiplication table
                let n = g.order();
                let mut out = vec![ring.zero(); n];
                for i in 0..n {
                    let a = &self.data[i];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let b = &other.data[j];
                        if b.is_zero() {
                            continue;
                        }
                        let k = g.mul(i, j);
                        out[k] = out[k].add(&a.mul(b)?)?;
                    }
                }
                out
            }
        };
        Ok(AlgebraElement {
            descriptor: self.descriptor.clone(),
            data,
        })
    }

    /// x^e for e ≥ 0, by repeated squaring.
    pub fn pow(&self, e: u64) -> AlgebraElement {
        let mut result = self.descriptor.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same algebra");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same algebra");
            }
        }
        result
    }

    /// Left-regular-representation matrix of this element: the dense-data
    /// matrix of y ↦ x·y on the free coordinates.
    fn left_multiplication_matrix(&self) -> Vec<Scalar> {
        let dim = self.descriptor.dimension();
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            let col = self
                .mul(&self.descriptor.basis_element(k))
                .expect("same algebra");
            cols.push(col.coords());
        }
        let mut out = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for col in cols.iter() {
                out.push(col[i].clone());
            }
        }
        out
    }

    /// Unit test. Matrix kinds use exact Gaussian elimination; group-algebra
    /// elements go through the left regular representation.
    pub fn is_unit(&self) -> Result<bool, AlgebraError> {
        Ok(self.inverse_inner()?.is_some())
    }

    /// Exact two-sided inverse.
    pub fn inverse(&self) -> Result<AlgebraElement, AlgebraError> {
        self.inverse_inner()?
            .ok_or_else(|| AlgebraError::NotAUnit(self.to_string()))
    }

    fn inverse_inner(&self) -> Result<Option<AlgebraElement>, AlgebraError> {
        let ring = self.descriptor.ring;
        if !ring.is_field() {
            return Err(AlgebraError::NotAField(ring));
        }
        match &self.descriptor.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                let inv = linalg::invert(*n, &self.data, &ring.one(), &ring.zero());
                Ok(inv.map(|data| {
                    let el = AlgebraElement {
                        descriptor: self.descriptor.clone(),
                        data,
                    };
                    debug_assert!(el.validate().is_ok(), "inverse left the subalgebra");
                    el
                }))
            }
            AlgebraKind::GroupAlgebra(g) => {
                let n = g.order();
                let rep = self.left_multiplication_matrix();
                let mut e0 = vec![ring.zero(); n];
                e0[0] = ring.one();
                let sol = linalg::solve(n, 1, &rep, &e0);
                Ok(sol.map(|data| {
                    let el = AlgebraElement {
                        descriptor: self.descriptor.clone(),
                        data,
                    };
                    debug_assert!(
                        el.mul(self).expect("same algebra") == self.descriptor.one(),
                        "one-sided inverse in a finite-dimensional algebra"
                    );
                    el
                }))
            }
        }
    }

    /// Least m ≥ 1 with x^m = 0, searched up to the dimension bound (a
    /// nilpotent element always has index within it).
    pub fn nilpotency_index(&self) -> Option<usize> {
        let bound = self.descriptor.nilpotency_bound();
        let mut p = self.clone();
        for m in 1..=bound {
            if p.is_zero() {
                return Some(m);
            }
            p = p.mul(self).expect("same algebra");
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).expect("same algebra") == *self
    }

    /// True iff the element commutes with the spanning set of the algebra.
    pub fn is_central(&self) -> bool {
        self.descriptor.basis().iter().all(|b| {
            self.mul(b).expect("same algebra") == b.mul(self).expect("same algebra")
        })
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.descriptor.kind {
            AlgebraKind::Matrix(n) | AlgebraKind::Triangular(n) => {
                let n = *n;
                write!(f, "[")?;
                for i in 0..n {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for j in 0..n {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", self.data[i * n + j])?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
            AlgebraKind::GroupAlgebra(g) => {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, c) in self.data.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if c.is_one() {
                        write!(f, "{}", g.name(i))?;
                    } else {
                        write!(f, "{}*{}", c, g.name(i))?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgebraKind::Matrix(n) => write!(f, "matrix:{n}:{}", self.ring),
            AlgebraKind::Triangular(n) => write!(f, "tri:{n}:{}", self.ring),
            AlgebraKind::GroupAlgebra(g) => {
                write!(f, "grpalg:<order {}>:{}", g.order(), self.ring)
            }
        }
    }
}
