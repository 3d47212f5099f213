//! The constructive derivation pipeline: starting from an admissible Laurent
//! polynomial identity in at most two variables, normalize exponent sums,
//! collapse to the univariate f₀, derive f₂ and f by mechanical rewriting in
//! the free monoid on {a, b, u} mod aa → 0, bb → 0, then verify the derived
//! identities on concrete algebras and extract nilpotency through the exact
//! Vandermonde solver.

mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::algebras::{AlgebraDescriptor, AlgebraElement, AlgebraError};
use crate::engine::{
    quantify_exhaustive, quantify_random, CheckMode, EngineError, ModeKind, QuantOutcome,
    Verdict, VerdictStatus, Witness,
};
use crate::scalars::{distinct_scalars, RingDescriptor, Scalar, ScalarError};
use crate::words::LaurentPolynomial;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("polynomial is not admissible; offending words: {}", offenders.join(", "))]
    NotAdmissible { offenders: Vec<String> },
    #[error("the derivation requires a nonzero constant term")]
    MissingConstantTerm,
    #[error("all nonconstant coefficients cancelled during collection")]
    AllNonconstantCancelled,
    #[error("internal consistency failure: surviving monomial {monomial} is not a power of abau")]
    NonPowerMonomial { monomial: String },
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("Vandermonde component p_{component} is nonzero: {value}")]
    VandermondeInconsistent { component: usize, value: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A univariate polynomial with exact coefficients and integer exponents
/// (possibly negative before shifting).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    ring: RingDescriptor,
    coeffs: BTreeMap<i64, Scalar>,
}

impl UnivariatePoly {
    pub fn zero(ring: RingDescriptor) -> Self {
        UnivariatePoly {
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Scalar)>>(
        ring: RingDescriptor,
        coeffs: I,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in coeffs {
            p.add_coeff(e, c);
        }
        p
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn add_coeff(&mut self, exponent: i64, c: Scalar) {
        assert_eq!(c.ring(), self.ring);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exponent) {
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

    pub fn coefficient(&self, exponent: i64) -> Scalar {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplies by t^k (shifts every exponent by k).
    pub fn shift_exponents(&self, k: i64) -> UnivariatePoly {
        UnivariatePoly {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.checked_add(k).expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients (the value at 1).
    pub fn coefficient_sum(&self) -> Scalar {
        self.coeffs
            .values()
            .fold(self.ring.zero(), |acc, c| acc.add(c).expect("same ring"))
    }

    /// Evaluates at a scalar point; exponents must be nonnegative.
    pub fn evaluate_scalar(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        let mut acc = x.ring().zero();
        for (&e, c) in &self.coeffs {
            assert!(e >= 0, "scalar evaluation needs nonnegative exponents");
            let mut pw = x.ring().one();
            for _ in 0..e {
                pw = pw.mul(x)?;
            }
            acc = acc.add(&c.embed(x.ring())?.mul(&pw)?)?;
        }
        Ok(acc)
    }

    /// Evaluates at an algebra element (the constant term multiplies the
    /// identity); exponents must be nonnegative. Coefficients embed into the
    /// algebra's scalar ring.
    pub fn evaluate_at(&self, x: &AlgebraElement) -> Result<AlgebraElement, ConstructionError> {
        let target = x.descriptor().ring();
        let mut acc = x.descriptor().zero();
        let mut power = x.descriptor().one();
        let mut current_exp = 0i64;
        for (&e, c) in &self.coeffs {
            assert!(e >= 0, "element evaluation needs nonnegative exponents");
            while current_exp < e {
                power = power.mul(x)?;
                current_exp += 1;
            }
            acc = acc.add(&power.scalar_mul(&c.embed(target)?)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// The power substitution applied during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalization {
    pub variable: u32,
    pub k: i64,
}

/// Everything the derivation produces: the normalized polynomial, f₀ with
/// its exponent range, the shift, f₂, f, and the degree data.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub input: LaurentPolynomial,
    pub reduced_to_two_variables: bool,
    pub normalization: Option<Normalization>,
    pub normalized: LaurentPolynomial,
    pub a1: Scalar,
    pub f0: UnivariatePoly,
    /// Minimum total exponent sum with a surviving coefficient.
    pub l: i64,
    /// Maximum total exponent sum with a surviving coefficient.
    pub r: i64,
    /// Exponent shift applied when l < 0 (f₁ = t^shift · f₀).
    pub shift: i64,
    /// The shifted polynomial the rewriting consumed (equals f₀ when l > 0).
    pub f1: UnivariatePoly,
    pub f2: UnivariatePoly,
    pub f: UnivariatePoly,
    /// Degree of f.
    pub d: i64,
    /// 2·deg(f₁) + 1, the bound f₂ must satisfy.
    pub degree_bound_f2: i64,
    /// 2·degree_bound_f2 + 1 = 4·deg(f₁) + 3, the bound f must satisfy.
    pub degree_bound_f: i64,
    pub warnings: Vec<String>,
}

impl ConstructionReport {
    pub fn to_json(&self) -> serde_json::Value {
        let poly_json = |p: &UnivariatePoly| -> serde_json::Value {
            serde_json::Value::Array(
                p.coeffs()
                    .iter()
                    .map(|(e, c)| serde_json::json!([e, c.to_string()]))
                    .collect(),
            )
        };
        serde_json::json!({
            "input": self.input.to_string(),
            "ring": self.input.ring().to_string(),
            "reduced_to_two_variables": self.reduced_to_two_variables,
            "normalization": self.normalization.map(|n| serde_json::json!({
                "variable": n.variable,
                "k": n.k,
            })),
            "normalized": self.normalized.to_string(),
            "a1": self.a1.to_string(),
            "f0": poly_json(&self.f0),
            "l": self.l,
            "r": self.r,
            "shift": self.shift,
            "f2": poly_json(&self.f2),
            "f": poly_json(&self.f),
            "deg_f2": self.f2.degree(),
            "d": self.d,
            "degree_bound_f2": self.degree_bound_f2,
            "degree_bound_f": self.degree_bound_f,
            "warnings": self.warnings,
        })
    }
}

/// Normalizes exponent sums on a two-variable admissible polynomial with a
/// nonzero constant term: if some nonconstant word has zero total exponent
/// sum, substitute x1 ↦ x1^k with k = 1 + max |exp-sum in x2|, which makes
/// every total sum nonzero simultaneously.
pub fn normalize_exponents(
    poly: &LaurentPolynomial,
) -> Result<(LaurentPolynomial, Option<Normalization>), ConstructionError> {
    let diag = poly.admissibility();
    if !diag.admissible {
        return Err(ConstructionError::NotAdmissible {
            offenders: diag.offenders.iter().map(|w| w.to_string()).collect(),
        });
    }
    if poly.constant_term().is_zero() {
        return Err(ConstructionError::MissingConstantTerm);
    }
    debug_assert!(
        poly.variables().iter().all(|&v| v <= 2),
        "normalize_exponents expects a two-variable polynomial"
    );
    let needs_normalization = poly
        .terms()
        .keys()
        .any(|w| !w.is_identity() && w.total_exp_sum() == 0);
    if !needs_normalization {
        return Ok((poly.clone(), None));
    }
    let k = 1 + poly
        .terms()
        .keys()
        .map(|w| w.exp_sum(2).abs())
        .max()
        .unwrap_or(0);
    let normalized = poly.substitute_power(1, k);
    debug_assert!(
        normalized
            .terms()
            .keys()
            .all(|w| w.is_identity() || w.total_exp_sum() != 0),
        "the k-substitution must clear every zero total sum"
    );
    Ok((normalized, Some(Normalization { variable: 1, k })))
}

/// Collapses a normalized polynomial to the univariate f₀ = a₁ + Σ bⱼ·tʲ,
/// where bⱼ sums the coefficients of all words with total exponent sum j.
/// Returns (f₀, l, r, warnings); zero bⱼ at the extremes are trimmed with a
/// warning so the degree claims refer to the effective range.
pub fn collapse_to_univariate(
    poly: &LaurentPolynomial,
) -> Result<(UnivariatePoly, i64, i64, Vec<String>), ConstructionError> {
    let a1 = poly.constant_term();
    if a1.is_zero() {
        return Err(ConstructionError::MissingConstantTerm);
    }
    let mut warnings = Vec::new();
    let mut sums: BTreeMap<i64, Scalar> = BTreeMap::new();
    let mut nominal_min = i64::MAX;
    let mut nominal_max = i64::MIN;
    for (word, coeff) in poly.terms() {
        if word.is_identity() {
            continue;
        }
        let j = word.total_exp_sum();
        assert_ne!(j, 0, "collapse expects normalized input");
        nominal_min = nominal_min.min(j);
        nominal_max = nominal_max.max(j);
        let entry = sums.entry(j).or_insert_with(|| poly.ring().zero());
        *entry = entry.add(coeff).expect("same ring");
    }
    sums.retain(|_, c| !c.is_zero());
    if sums.is_empty() {
        return Err(ConstructionError::AllNonconstantCancelled);
    }
    let l = *sums.keys().next().expect("nonempty");
    let r = *sums.keys().next_back().expect("nonempty");
    if l != nominal_min || r != nominal_max {
        warnings.push(format!(
            "zero coefficients trimmed at the extremes: nominal exponent range [{nominal_min}, {nominal_max}], effective [{l}, {r}]"
        ));
    }
    let mut f0 = UnivariatePoly::from_coeffs(poly.ring(), sums);
    f0.add_coeff(0, a1.clone());
    if f0.coefficient(0).is_zero() {
        // a₁ cancelled against b₀ — impossible after normalization (j ≠ 0)
        unreachable!("constant collision after normalization");
    }
    let total = f0.coefficient_sum();
    if !total.is_zero() {
        warnings.push(format!(
            "coefficient sum is {total}, not 0: the polynomial cannot vanish at the identity unit, so it is not an LPI of any unital algebra; construction proceeds formally"
        ));
    }
    Ok((f0, l, r, warnings))
}

/// Clears negative exponents: returns (f₁, shift) with f₁ = t^shift · f₀ and
/// shift = −l when l < 0, else 0.
pub fn shift_positive(f0: &UnivariatePoly) -> (UnivariatePoly, i64) {
    match f0.valuation() {
        Some(v) if v < 0 => (f0.shift_exponents(-v), -v),
        _ => (f0.clone(), 0),
    }
}

/// Derives f₂ by expanding ab·f₁(α)·au in the free monoid on {a, b, u} mod
/// aa → 0, bb → 0, with α = (1 + aua)(1 + bauab). Every surviving monomial
/// must be a literal power (abau)^j — the mechanical counterpart of the
/// degree argument — and the collected coefficients form f₂.
pub fn derive_f2(f1: &UnivariatePoly) -> Result<UnivariatePoly, ConstructionError> {
    use rewrite::{alpha, monomial_string, power_of_abau, Letter, MonoidPoly};
    let ring = f1.ring();
    assert!(
        f1.valuation().is_none_or(|v| v >= 0),
        "derive_f2 expects nonnegative exponents (shift first)"
    );
    let alpha = alpha(ring);
    let mut accumulated = MonoidPoly::zero(ring);
    let mut power = MonoidPoly::one(ring);
    let mut current = 0i64;
    for (&h, coeff) in f1.coeffs() {
        while current < h {
            power = power.mul(&alpha);
            current += 1;
        }
        accumulated.add_scaled(&power, coeff);
    }
    let ab = MonoidPoly::monomial(ring, vec![Letter::A, Letter::B]);
    let au = MonoidPoly::monomial(ring, vec![Letter::A, Letter::U]);
    let sandwich = ab.mul(&accumulated).mul(&au);
    let mut f2 = UnivariatePoly::zero(ring);
    for (m, c) in &sandwich.terms {
        match power_of_abau(m) {
            Some(j) => f2.add_coeff(j as i64, c.clone()),
            None => {
                return Err(ConstructionError::NonPowerMonomial {
                    monomial: monomial_string(m),
                })
            }
        }
    }
    debug_assert!(f2.coefficient(0).is_zero());
    debug_assert_eq!(
        f2.coefficient(1),
        f1.coefficient_sum(),
        "the linear coefficient of f₂ must equal the coefficient sum"
    );
    Ok(f2)
}

/// Derives f from f₂ by the exponent map j ↦ 2j + 1: f(s) = Σ cⱼ s^(2j+1).
pub fn derive_f(f2: &UnivariatePoly) -> UnivariatePoly {
    UnivariatePoly::from_coeffs(
        f2.ring(),
        f2.coeffs().iter().map(|(&j, c)| (2 * j + 1, c.clone())),
    )
}

/// Runs the whole derivation: two-variable reduction (when needed),
/// admissibility, normalization, collapse, shift, f₂, f.
pub fn derive(poly: &LaurentPolynomial) -> Result<ConstructionReport, ConstructionError> {
    let needs_reduction = poly.variables().iter().any(|&v| v > 2);
    let two_var = if needs_reduction {
        poly.reduce_to_two_variables()
    } else {
        poly.clone()
    };
    let (normalized, normalization) = normalize_exponents(&two_var)?;
    let (f0, l, r, warnings) = collapse_to_univariate(&normalized)?;
    let (f1, shift) = shift_positive(&f0);
    let f2 = derive_f2(&f1)?;
    let f = derive_f(&f2);
    let deg_f1 = f1.degree().expect("f₁ is nonzero");
    let degree_bound_f2 = 2 * deg_f1 + 1;
    let degree_bound_f = 2 * degree_bound_f2 + 1;
    let d = f.degree().expect("f is nonzero");
    debug_assert!(f2.degree().expect("nonzero") <= degree_bound_f2);
    debug_assert!(d <= degree_bound_f);
    debug_assert!(f.coeffs().keys().all(|e| e % 2 == 1), "f has odd support");
    Ok(ConstructionReport {
        input: poly.clone(),
        reduced_to_two_variables: needs_reduction,
        normalization,
        normalized,
        a1: f0.coefficient(0),
        f0,
        l,
        r,
        shift,
        f1,
        f2,
        f,
        d,
        degree_bound_f2,
        degree_bound_f,
        warnings,
    })
}

/// The three verification layers for a derivation on a concrete algebra.
#[derive(Debug)]
pub struct VerifyReport {
    pub construction: ConstructionReport,
    /// The LPI premise on the unit group.
    pub premise: Verdict,
    /// True when the premise failed: the derived layers are then vacuous as
    /// predictions (they are still checked and reported).
    pub vacuous: bool,
    /// f₂(a·b·a·u) = 0 over (a, b, u) with a² = b² = 0.
    pub f2_layer: Verdict,
    /// f(b·a·c·u) = 0 over (a, b, c, u) with a² = bc = 0.
    pub f_layer: Verdict,
}

fn layer_verdict(outcome: QuantOutcome, labels: &[u32], mode: &CheckMode) -> Verdict {
    match outcome {
        QuantOutcome::AllZero { evaluations } => Verdict {
            status: match mode.kind {
                ModeKind::Exhaustive => VerdictStatus::Holds,
                ModeKind::Random { trials, .. } => VerdictStatus::HoldsProbably { trials },
            },
            evaluations,
        },
        QuantOutcome::Counterexample {
            tuple,
            value,
            evaluations,
            trial,
        } => Verdict {
            status: VerdictStatus::Fails {
                witness: Witness {
                    assignment: labels.iter().copied().zip(tuple).collect(),
                    value,
                    trial,
                    seed: mode.seed(),
                },
            },
            evaluations,
        },
    }
}

/// All (b, c) pairs with b·c = 0, including the degenerate ones with b or c
/// zero (the f layer quantifies over those too).
fn zero_product_pairs(
    algebra: &AlgebraDescriptor,
    budget: u64,
) -> Result<Vec<(AlgebraElement, AlgebraElement)>, ConstructionError> {
    let all: Vec<AlgebraElement> = algebra.enumerate_elements(budget)?.collect();
    if (all.len() as u128).pow(2) > budget as u128 {
        return Err(EngineError::TooLarge {
            needed: format!("{}^2", all.len()),
            budget,
        }
        .into());
    }
    let mut pairs = Vec::new();
    for b in &all {
        for c in &all {
            if b.mul(c)?.is_zero() {
                pairs.push((b.clone(), c.clone()));
            }
        }
    }
    Ok(pairs)
}

/// Verifies a derivation on a concrete algebra: the LPI premise, then the
/// f₂ layer (a² = b² = 0) and the f layer (a² = bc = 0), each quantified
/// according to `mode` with tuples filtered through the preconditions.
pub fn verify_construction(
    algebra: &AlgebraDescriptor,
    poly: &LaurentPolynomial,
    mode: &CheckMode,
) -> Result<VerifyReport, ConstructionError> {
    let construction = derive(poly)?;
    let premise = crate::engine::check_lpi(algebra, poly, mode)?;
    let vacuous = !premise.holds();
    let f2 = construction.f2.clone();
    let f = construction.f.clone();

    let (f2_layer, f_layer) = match mode.kind {
        ModeKind::Exhaustive => {
            let square_zero = algebra.square_zero_elements(mode.budget)?;
            let all: Vec<AlgebraElement> = algebra.enumerate_elements(mode.budget)?.collect();
            let pairs = zero_product_pairs(algebra, mode.budget)?;

            let domains2: Vec<&[AlgebraElement]> =
                vec![&square_zero, &square_zero, &all];
            let outcome2 = quantify_exhaustive(&domains2, mode.budget, |tuple| {
                let (a, b, u) = (tuple[0], tuple[1], tuple[2]);
                let abau = a.mul(b)?.mul(a)?.mul(u)?;
                let value = f2.evaluate_at(&abau).map_err(flatten_eval)?;
                Ok(if value.is_zero() { None } else { Some(value) })
            })?;

            // the f layer quantifies (a, (b, c), u); the pair domain is not
            // a plain cartesian factor, so iterate it directly
            let mut outcome3 = QuantOutcome::AllZero { evaluations: 0 };
            let planned = (square_zero.len() as u128)
                * (pairs.len() as u128)
                * (all.len() as u128);
            if planned > mode.budget as u128 {
                return Err(EngineError::TooLarge {
                    needed: planned.to_string(),
                    budget: mode.budget,
                }
                .into());
            }
            let mut evaluations = 0u64;
            'outer: for a in &square_zero {
                for (b, c) in &pairs {
                    let bac = b.mul(a)?.mul(c)?;
                    for u in &all {
                        let bacu = bac.mul(u)?;
                        evaluations += 1;
                        let value = f.evaluate_at(&bacu).map_err(flatten_eval)?;
                        if !value.is_zero() {
                            outcome3 = QuantOutcome::Counterexample {
                                tuple: vec![a.clone(), b.clone(), c.clone(), u.clone()],
                                value,
                                evaluations,
                                trial: None,
                            };
                            break 'outer;
                        }
                    }
                }
            }
            if let QuantOutcome::AllZero { evaluations: e } = &mut outcome3 {
                *e = evaluations;
            }
            (
                layer_verdict(outcome2, &[1, 2, 3], mode),
                layer_verdict(outcome3, &[1, 2, 3, 4], mode),
            )
        }
        ModeKind::Random { trials, seed } => {
            let f2_ref = &f2;
            let outcome2 = quantify_random(
                3,
                trials,
                seed,
                |i, rng| {
                    Ok(if i < 2 {
                        algebra.random_square_zero(rng, mode.height, mode.retries)?
                    } else {
                        algebra.random_element(rng, mode.height)
                    })
                },
                |tuple| {
                    let abau = tuple[0].mul(tuple[1])?.mul(tuple[0])?.mul(tuple[2])?;
                    let value = f2_ref.evaluate_at(&abau).map_err(flatten_eval)?;
                    Ok(if value.is_zero() { None } else { Some(value) })
                },
            )?;
            // sample (a, (b, c), u) per trial; positions: 0 = a, 1 = b,
            // 2 = c, 3 = u, with (b, c) drawn jointly
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let f_ref = &f;
            let mut outcome3 = QuantOutcome::AllZero { evaluations: 0 };
            let mut evaluations = 0u64;
            for trial in 0..trials {
                let a = algebra.random_square_zero(&mut rng, mode.height, mode.retries)?;
                let (b, c) =
                    algebra.random_zero_divisor_pair(&mut rng, mode.height, mode.retries)?;
                let u = algebra.random_element(&mut rng, mode.height);
                let bacu = b.mul(&a)?.mul(&c)?.mul(&u)?;
                evaluations += 1;
                let value = f_ref.evaluate_at(&bacu).map_err(flatten_eval)?;
                if !value.is_zero() {
                    outcome3 = QuantOutcome::Counterexample {
                        tuple: vec![a, b, c, u],
                        value,
                        evaluations,
                        trial: Some(trial),
                    };
                    break;
                }
            }
            if let QuantOutcome::AllZero { evaluations: e } = &mut outcome3 {
                *e = evaluations;
            }
            (
                layer_verdict(outcome2, &[1, 2, 3], mode),
                layer_verdict(outcome3, &[1, 2, 3, 4], mode),
            )
        }
    };
    Ok(VerifyReport {
        construction,
        premise,
        vacuous,
        f2_layer,
        f_layer,
    })
}

/// ConstructionError doubles as the evaluation error inside engine closures;
/// fold it into EngineError for the quantifiers.
fn flatten_eval(e: ConstructionError) -> EngineError {
    match e {
        ConstructionError::Scalar(s) => EngineError::Scalar(s),
        ConstructionError::Algebra(a) => EngineError::Algebra(a),
        ConstructionError::Engine(e) => e,
        other => EngineError::Algebra(AlgebraError::InvalidElement(other.to_string())),
    }
}

/// Result of the Vandermonde extraction at one precondition-satisfying
/// point (a, b, c, u).
#[derive(Debug)]
pub struct VandermondeReport {
    /// The d distinct nonzero sample points.
    pub lambdas: Vec<Scalar>,
    /// The extracted algebra-valued components p₁ … p_d.
    pub components: Vec<AlgebraElement>,
    /// Least m with (bacu)^m = 0, if nilpotent.
    pub bacu_nilpotency_index: Option<usize>,
    /// Whether (bacu)^d = 0.
    pub bacu_power_zero: bool,
    pub d: i64,
}

/// Evaluates f(bac·λu) at d distinct nonzero λ, solves the exact
/// Vandermonde system for the components pᵢ, and checks each pᵢ = 0 plus
/// (bacu)^d = 0 independently. A nonzero component falsifies the premise
/// chain and is reported as an error.
pub fn vandermonde_extract(
    algebra: &AlgebraDescriptor,
    f: &UnivariatePoly,
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
    u: &AlgebraElement,
) -> Result<VandermondeReport, ConstructionError> {
    if !a.mul(a)?.is_zero() {
        return Err(ConstructionError::PreconditionNotMet(format!(
            "a² ≠ 0 for a = {a}"
        )));
    }
    if !b.mul(c)?.is_zero() {
        return Err(ConstructionError::PreconditionNotMet(format!(
            "b·c ≠ 0 for b = {b}, c = {c}"
        )));
    }
    let ring = algebra.ring();
    if !ring.is_field() {
        return Err(AlgebraError::NotAField(ring).into());
    }
    let d = f.degree().ok_or(ConstructionError::PreconditionNotMet(
        "f is zero".into(),
    ))?;
    assert!(f.coefficient(0).is_zero(), "f must have zero constant term");
    let lambdas = distinct_scalars(ring, d as usize)?;
    let bacu = b.mul(a)?.mul(c)?.mul(u)?;

    // rows: f(bac·λu) for each λ
    let mut values = Vec::with_capacity(d as usize);
    for lambda in &lambdas {
        let scaled_u = u.scalar_mul(lambda)?;
        values.push(f.evaluate_at(&b.mul(a)?.mul(c)?.mul(&scaled_u)?)?);
    }
    let components = solve_power_components(algebra, &lambdas, &values)?;
    if let Some((i, value)) = components.iter().enumerate().find(|(_, p)| !p.is_zero()) {
        return Err(ConstructionError::VandermondeInconsistent {
            component: i + 1,
            value: value.to_string(),
        });
    }
    let index = bacu.nilpotency_index();
    let power_zero = index.is_some_and(|m| m as i64 <= d);
    Ok(VandermondeReport {
        lambdas,
        components,
        bacu_nilpotency_index: index,
        bacu_power_zero: power_zero,
        d,
    })
}

/// Solves Σⱼ λᵢʲ·pⱼ = valueᵢ (j = 1…d, one equation per sample point) for
/// the algebra-valued components pⱼ, by exact Gaussian elimination on the
/// λ-power matrix with one right-hand-side column per algebra coordinate.
/// The points must be distinct and nonzero, which makes the system
/// uniquely solvable.
pub fn solve_power_components(
    algebra: &AlgebraDescriptor,
    lambdas: &[Scalar],
    values: &[AlgebraElement],
) -> Result<Vec<AlgebraElement>, ConstructionError> {
    assert_eq!(lambdas.len(), values.len());
    let d = lambdas.len();
    let dim = algebra.dimension();
    let ring = algebra.ring();
    let mut matrix = Vec::with_capacity(d * d);
    let mut rhs = Vec::with_capacity(d * dim);
    for (lambda, value) in lambdas.iter().zip(values) {
        let mut pw = ring.one();
        for _ in 0..d {
            pw = pw.mul(lambda)?;
            matrix.push(pw.clone());
        }
        rhs.extend(value.coords());
    }
    let solution = crate::linalg::solve(d, dim, &matrix, &rhs)
        .expect("distinct nonzero points give an invertible system");
    Ok((0..d)
        .map(|i| algebra.from_coords(solution[i * dim..(i + 1) * dim].to_vec()))
        .collect())
}

/// Which case of the square-zero pair bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// |K| > 2d (or K infinite): the bound applies to every pair.
    LargeField,
    /// Small field: the bound is only claimed for pairs with ab nilpotent.
    NilpotentFilter,
}

/// Outcome of the (ab)^{2d} = 0 check over square-zero pairs.
#[derive(Debug)]
pub struct SquareZeroPairReport {
    pub case: BoundCase,
    /// 2d.
    pub bound: i64,
    pub verdict: Verdict,
    /// Largest nilpotency index of ab observed among checked pairs.
    pub max_index_observed: Option<usize>,
    /// Pairs skipped in the small-field case because ab was not nilpotent
    /// (the bound makes no claim there); reported, never asserted.
    pub neither_case: Vec<String>,
    pub pairs_checked: u64,
}

/// Checks (ab)^{2d} = 0 over pairs (a, b) with a² = b² = 0, where d is the
/// degree from a derivation whose premise holds on U(A). Over a field with
/// more than 2d elements the bound applies to every pair; over a small
/// field only to pairs with ab nilpotent.
pub fn square_zero_pair_bound(
    algebra: &AlgebraDescriptor,
    d: i64,
    mode: &CheckMode,
) -> Result<SquareZeroPairReport, ConstructionError> {
    let bound = 2 * d;
    let case = match algebra.ring().size() {
        None => BoundCase::LargeField,
        Some(size) if size as i64 > bound => BoundCase::LargeField,
        Some(_) => BoundCase::NilpotentFilter,
    };
    let mut max_index: Option<usize> = None;
    let mut neither = Vec::new();
    let mut pairs_checked = 0u64;

    let mut check_pair = |a: &AlgebraElement,
                          b: &AlgebraElement|
     -> Result<Option<AlgebraElement>, EngineError> {
        let ab = a.mul(b)?;
        let index = ab.nilpotency_index();
        match index {
            Some(m) => {
                pairs_checked += 1;
                max_index = Some(max_index.map_or(m, |cur| cur.max(m)));
                if m as i64 <= bound {
                    Ok(None)
                } else {
                    Ok(Some(ab))
                }
            }
            None => {
                if case == BoundCase::LargeField {
                    // the bound claims nilpotency here; a non-nilpotent ab is
                    // a genuine counterexample
                    pairs_checked += 1;
                    Ok(Some(ab))
                } else {
                    neither.push(format!("a = {a}, b = {b}: ab not nilpotent"));
                    Ok(None)
                }
            }
        }
    };

    let outcome = match mode.kind {
        ModeKind::Exhaustive => {
            let square_zero = algebra.square_zero_elements(mode.budget)?;
            let domains: Vec<&[AlgebraElement]> = vec![&square_zero, &square_zero];
            quantify_exhaustive(&domains, mode.budget, |tuple| {
                check_pair(tuple[0], tuple[1])
            })?
        }
        ModeKind::Random { trials, seed } => quantify_random(
            2,
            trials,
            seed,
            |_, rng| Ok(algebra.random_square_zero(rng, mode.height, mode.retries)?),
            |tuple| check_pair(tuple[0], tuple[1]),
        )?,
    };
    let verdict = layer_verdict(outcome, &[1, 2], mode);
    Ok(SquareZeroPairReport {
        case,
        bound,
        verdict,
        max_index_observed: max_index,
        neither_case: neither,
        pairs_checked,
    })
}

/// Samples an admissible polynomial over `ring`: a nonzero constant plus
/// up to `max_words` random nonconstant words in x1, x2 of geodesic length
/// ≤ `max_len`, rejecting inadmissible draws. Used by the randomized
/// consistency harness.
pub fn sample_admissible_poly<R: Rng>(
    rng: &mut R,
    ring: RingDescriptor,
    max_words: usize,
    max_len: u64,
) -> LaurentPolynomial {
    use crate::words::GroupWord;
    loop {
        let mut poly = LaurentPolynomial::zero(ring);
        let nonzero_scalar = |rng: &mut R| -> Scalar {
            loop {
                let v = rng.random_range(-6i64..=6);
                let s = Scalar::from_i64(ring, v);
                if !s.is_zero() {
                    return s;
                }
            }
        };
        poly.add_term(GroupWord::identity(), nonzero_scalar(rng));
        let words = rng.random_range(1..=max_words);
        for _ in 0..words {
            let mut w = GroupWord::identity();
            let syllables = rng.random_range(1..=3);
            for _ in 0..syllables {
                let v = rng.random_range(1u32..=2);
                let e = loop {
                    let e = rng.random_range(-2i64..=2);
                    if e != 0 {
                        break e;
                    }
                };
                w = w.multiply(&GroupWord::power(v, e));
            }
            if w.is_identity() || w.length() > max_len {
                continue;
            }
            poly.add_term(w, nonzero_scalar(rng));
        }
        let has_nonconstant = poly.terms().keys().any(|w| !w.is_identity());
        if has_nonconstant
            && poly.admissibility().admissible
            && !poly.constant_term().is_zero()
        {
            return poly;
        }
    }
}
