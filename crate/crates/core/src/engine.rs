//! Quantified identity checking: Laurent polynomial identities on unit
//! groups, polynomial identities on whole algebras (or right ideals), group
//! identities, generalized polynomial identities, and standard polynomials.
//!
//! Checks run exhaustively (within an evaluation budget) or with a seeded
//! random sampler; a randomized pass is always reported as `HoldsProbably`,
//! never upgraded to certainty. Witnesses carry the full assignment plus the
//! seed, so every failure replays bit-exactly.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebras::{AlgebraDescriptor, AlgebraElement, AlgebraError};
use crate::scalars::RingDescriptor;
use crate::words::{EvalError, GroupWord, LaurentPolynomial};

/// Default evaluation budget for exhaustive quantification.
pub const DEFAULT_BUDGET: u64 = 1 << 26;
/// Permutation blowup guard for standard polynomials.
pub const STANDARD_DEGREE_GUARD: usize = 8;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("exhaustive check needs {needed} evaluations, over the budget {budget}")]
    TooLarge { needed: String, budget: u64 },
    #[error("polynomial has a negative exponent in {word}; whole-algebra quantification cannot invert")]
    NegativeExponent { word: String },
    #[error("standard polynomial degree {n} exceeds the guard {guard}")]
    DegreeTooLarge { n: usize, guard: usize },
    #[error("generalized polynomial is malformed: {0}")]
    MalformedGpi(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}

/// Exhaustive quantification, or seeded random sampling with a trial count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

/// How to quantify: mode kind, evaluation budget, and sampling parameters
/// for the random mode.
#[derive(Debug, Clone, Copy)]
pub struct CheckMode {
    pub kind: ModeKind,
    pub budget: u64,
    pub height: u64,
    pub retries: u64,
}

impl CheckMode {
    pub fn exhaustive() -> Self {
        CheckMode {
            kind: ModeKind::Exhaustive,
            budget: DEFAULT_BUDGET,
            height: crate::algebras::DEFAULT_HEIGHT,
            retries: crate::algebras::DEFAULT_RETRIES,
        }
    }

    pub fn random(trials: u64, seed: u64) -> Self {
        CheckMode {
            kind: ModeKind::Random { trials, seed },
            budget: DEFAULT_BUDGET.max(trials),
            height: crate::algebras::DEFAULT_HEIGHT,
            retries: crate::algebras::DEFAULT_RETRIES,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        if let ModeKind::Random { trials, .. } = self.kind {
            self.budget = self.budget.max(trials);
        }
        self
    }

    pub fn with_height(mut self, height: u64) -> Self {
        self.height = height;
        self
    }

    pub fn seed(&self) -> Option<u64> {
        match self.kind {
            ModeKind::Exhaustive => None,
            ModeKind::Random { seed, .. } => Some(seed),
        }
    }
}

/// A reproducible counterexample: the full assignment, the nonzero value it
/// evaluated to, and (in random mode) the trial index and seed.
#[derive(Debug, Clone)]
pub struct Witness {
    pub assignment: Vec<(u32, AlgebraElement)>,
    pub value: AlgebraElement,
    pub trial: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub enum VerdictStatus {
    /// Exhaustively verified.
    Holds,
    /// Survived the stated number of random trials.
    HoldsProbably { trials: u64 },
    /// Falsified, with a reproducible witness.
    Fails { witness: Witness },
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub evaluations: u64,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self.status, VerdictStatus::Fails { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            VerdictStatus::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    /// One-line human-readable rendering.
    pub fn summary(&self) -> String {
        match &self.status {
            VerdictStatus::Holds => format!("Holds (exhaustive, {} evaluations)", self.evaluations),
            VerdictStatus::HoldsProbably { trials } => {
                format!("HoldsProbably ({trials} random trials, no counterexample)")
            }
            VerdictStatus::Fails { witness } => {
                let assign = witness
                    .assignment
                    .iter()
                    .map(|(v, e)| format!("x{v} = {e}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("Fails (witness: {assign}; value {})", witness.value)
            }
        }
    }
}

pub(crate) enum QuantOutcome {
    AllZero {
        evaluations: u64,
    },
    Counterexample {
        tuple: Vec<AlgebraElement>,
        value: AlgebraElement,
        evaluations: u64,
        trial: Option<u64>,
    },
}

/// Iterates the full cartesian product of the domains in a fixed odometer
/// order (last position fastest) and reports the first nonzero evaluation.
pub(crate) fn quantify_exhaustive<F>(
    domains: &[&[AlgebraElement]],
    budget: u64,
    mut eval: F,
) -> Result<QuantOutcome, EngineError>
where
    F: FnMut(&[&AlgebraElement]) -> Result<Option<AlgebraElement>, EngineError>,
{
    let mut planned: u128 = 1;
    for d in domains {
        planned = planned.saturating_mul(d.len() as u128);
    }
    if planned > budget as u128 {
        return Err(EngineError::TooLarge {
            needed: planned.to_string(),
            budget,
        });
    }
    if planned == 0 {
        return Ok(QuantOutcome::AllZero { evaluations: 0 });
    }
    let arity = domains.len();
    let mut index = vec![0usize; arity];
    let mut evaluations = 0u64;
    loop {
        let tuple: Vec<&AlgebraElement> =
            index.iter().enumerate().map(|(i, &k)| &domains[i][k]).collect();
        evaluations += 1;
        if let Some(value) = eval(&tuple)? {
            return Ok(QuantOutcome::Counterexample {
                tuple: tuple.into_iter().cloned().collect(),
                value,
                evaluations,
                trial: None,
            });
        }
        // odometer increment
        let mut pos = arity;
        loop {
            if pos == 0 {
                return Ok(QuantOutcome::AllZero { evaluations });
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < domains[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// Samples `trials` tuples with a ChaCha stream seeded from `seed` and
/// reports the lowest-trial nonzero evaluation.
pub(crate) fn quantify_random<S, F>(
    arity: usize,
    trials: u64,
    seed: u64,
    mut sample: S,
    mut eval: F,
) -> Result<QuantOutcome, EngineError>
where
    S: FnMut(usize, &mut ChaCha8Rng) -> Result<AlgebraElement, EngineError>,
    F: FnMut(&[&AlgebraElement]) -> Result<Option<AlgebraElement>, EngineError>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0u64;
    for trial in 0..trials {
        let tuple: Vec<AlgebraElement> = (0..arity)
            .map(|i| sample(i, &mut rng))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&AlgebraElement> = tuple.iter().collect();
        evaluations += 1;
        if let Some(value) = eval(&refs)? {
            return Ok(QuantOutcome::Counterexample {
                tuple,
                value,
                evaluations,
                trial: Some(trial),
            });
        }
    }
    Ok(QuantOutcome::AllZero { evaluations })
}

fn outcome_to_verdict(
    outcome: QuantOutcome,
    variables: &[u32],
    mode: &CheckMode,
) -> Verdict {
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
                    assignment: variables.iter().copied().zip(tuple).collect(),
                    value,
                    trial,
                    seed: mode.seed(),
                },
            },
            evaluations,
        },
    }
}

fn assignment_of(variables: &[u32], tuple: &[&AlgebraElement]) -> BTreeMap<u32, AlgebraElement> {
    variables
        .iter()
        .copied()
        .zip(tuple.iter().map(|e| (*e).clone()))
        .collect()
}

fn nonzero(value: AlgebraElement) -> Option<AlgebraElement> {
    if value.is_zero() {
        None
    } else {
        Some(value)
    }
}

/// Evaluates a constant polynomial (no variables) as an identity check.
fn constant_verdict(
    algebra: &AlgebraDescriptor,
    poly: &LaurentPolynomial,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    let value = algebra
        .one()
        .scalar_mul(&poly.constant_term().embed(algebra.ring())?)
        .map_err(EngineError::Algebra)?;
    Ok(match nonzero(value) {
        None => Verdict {
            status: match mode.kind {
                ModeKind::Exhaustive => VerdictStatus::Holds,
                ModeKind::Random { trials, .. } => VerdictStatus::HoldsProbably { trials },
            },
            evaluations: 1,
        },
        Some(value) => Verdict {
            status: VerdictStatus::Fails {
                witness: Witness {
                    assignment: vec![],
                    value,
                    trial: None,
                    seed: mode.seed(),
                },
            },
            evaluations: 1,
        },
    })
}

/// Checks `poly` as a Laurent polynomial identity on the unit group:
/// assignments range over unit tuples only.
pub fn check_lpi(
    algebra: &AlgebraDescriptor,
    poly: &LaurentPolynomial,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    let variables: Vec<u32> = poly.variables().into_iter().collect();
    if variables.is_empty() {
        return constant_verdict(algebra, poly, mode);
    }
    let eval = |tuple: &[&AlgebraElement]| -> Result<Option<AlgebraElement>, EngineError> {
        let assignment = assignment_of(&variables, tuple);
        Ok(nonzero(poly.evaluate(&assignment)?))
    };
    let outcome = match mode.kind {
        ModeKind::Exhaustive => {
            let units = algebra.enumerate_units(mode.budget)?;
            let domains: Vec<&[AlgebraElement]> =
                variables.iter().map(|_| units.as_slice()).collect();
            quantify_exhaustive(&domains, mode.budget, eval)?
        }
        ModeKind::Random { trials, seed } => quantify_random(
            variables.len(),
            trials,
            seed,
            |_, rng| Ok(algebra.random_unit(rng, mode.height, mode.retries)?),
            eval,
        )?,
    };
    Ok(outcome_to_verdict(outcome, &variables, mode))
}

fn require_nonnegative_exponents(poly: &LaurentPolynomial) -> Result<(), EngineError> {
    for word in poly.terms().keys() {
        if word.syllables().iter().any(|&(_, e)| e < 0) {
            return Err(EngineError::NegativeExponent {
                word: word.to_string(),
            });
        }
    }
    Ok(())
}

/// Checks `poly` (no negative exponents) as a polynomial identity over the
/// whole algebra.
pub fn check_pi(
    algebra: &AlgebraDescriptor,
    poly: &LaurentPolynomial,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    check_pi_inner(algebra, poly, mode, None)
}

/// Checks `poly` as a polynomial identity of the right ideal generated by
/// `generators`: assignments range over the ideal's elements.
pub fn check_pi_on_right_ideal(
    algebra: &AlgebraDescriptor,
    generators: &[AlgebraElement],
    poly: &LaurentPolynomial,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    check_pi_inner(algebra, poly, mode, Some(generators))
}

fn check_pi_inner(
    algebra: &AlgebraDescriptor,
    poly: &LaurentPolynomial,
    mode: &CheckMode,
    ideal_generators: Option<&[AlgebraElement]>,
) -> Result<Verdict, EngineError> {
    require_nonnegative_exponents(poly)?;
    let variables: Vec<u32> = poly.variables().into_iter().collect();
    if variables.is_empty() {
        return constant_verdict(algebra, poly, mode);
    }
    let eval = |tuple: &[&AlgebraElement]| -> Result<Option<AlgebraElement>, EngineError> {
        let assignment = assignment_of(&variables, tuple);
        Ok(nonzero(poly.evaluate(&assignment)?))
    };
    let outcome = match mode.kind {
        ModeKind::Exhaustive => {
            let pool: Vec<AlgebraElement> = match ideal_generators {
                None => algebra.enumerate_elements(mode.budget)?.collect(),
                Some(gens) => right_ideal_elements(algebra, gens, mode.budget)?,
            };
            let domains: Vec<&[AlgebraElement]> =
                variables.iter().map(|_| pool.as_slice()).collect();
            quantify_exhaustive(&domains, mode.budget, eval)?
        }
        ModeKind::Random { trials, seed } => quantify_random(
            variables.len(),
            trials,
            seed,
            |_, rng| {
                let a = algebra.random_element(rng, mode.height);
                Ok(match ideal_generators {
                    None => a,
                    Some(gens) => {
                        let mut acc = algebra.zero();
                        for g in gens {
                            let u = algebra.random_element(rng, mode.height);
                            acc = acc.add(&g.mul(&u)?)?;
                        }
                        acc
                    }
                })
            },
            eval,
        )?,
    };
    Ok(outcome_to_verdict(outcome, &variables, mode))
}

/// Materializes the elements of the right ideal generated by `gens`:
/// all sums Σ gᵢ·aᵢ over element tuples, deduplicated.
fn right_ideal_elements(
    algebra: &AlgebraDescriptor,
    gens: &[AlgebraElement],
    cap: u64,
) -> Result<Vec<AlgebraElement>, EngineError> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<crate::scalars::Scalar>> = BTreeSet::new();
    let mut out = Vec::new();
    // Σ gᵢ·aᵢ over tuples; since the ideal is a K-subspace, one generator at
    // a time suffices when added to the closure
    let mut pool = vec![algebra.zero()];
    seen.insert(algebra.zero().coords());
    for g in gens {
        let mut extended = Vec::new();
        for base in &pool {
            for a in algebra.enumerate_elements(cap)? {
                let el = base.add(&g.mul(&a)?)?;
                if seen.insert(el.coords()) {
                    extended.push(el);
                }
            }
        }
        pool.extend(extended);
        if pool.len() as u64 > cap {
            return Err(EngineError::TooLarge {
                needed: pool.len().to_string(),
                budget: cap,
            });
        }
    }
    out.extend(pool);
    Ok(out)
}

/// The standard polynomial Sₙ = Σ_{σ∈Symₙ} sgn(σ)·x_{σ(1)}⋯x_{σ(n)}, with
/// coefficients over ℤ so it embeds in any scalar ring.
pub fn standard_polynomial(n: usize) -> Result<LaurentPolynomial, EngineError> {
    standard_polynomial_with_guard(n, STANDARD_DEGREE_GUARD)
}

/// Same, with an explicit permutation blowup guard.
pub fn standard_polynomial_with_guard(
    n: usize,
    guard: usize,
) -> Result<LaurentPolynomial, EngineError> {
    if n < 1 || n > guard {
        return Err(EngineError::DegreeTooLarge { n, guard });
    }
    let ring = RingDescriptor::Integers;
    let mut poly = LaurentPolynomial::zero(ring);
    for (perm, sign) in permutations_with_sign(n) {
        let word = GroupWord::from_syllables(perm.iter().map(|&v| (v as u32 + 1, 1i64)));
        poly.add_term(word, crate::scalars::Scalar::from_i64(ring, sign));
    }
    Ok(poly)
}

/// All permutations of {0..n-1} in lexicographic order with their signs.
pub(crate) fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    use itertools::Itertools;
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut inversions = 0u32;
            for i in 0..p.len() {
                for j in (i + 1)..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// Checks Sₙ as a polynomial identity of the algebra.
pub fn check_standard(
    algebra: &AlgebraDescriptor,
    n: usize,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    check_pi(algebra, &standard_polynomial(n)?, mode)
}

/// Checks the group identity w = 1 on the unit group: evaluates w over unit
/// tuples and compares with the algebra identity. Equivalent to
/// `check_lpi(A, 1 - w)`.
pub fn check_group_identity(
    algebra: &AlgebraDescriptor,
    word: &GroupWord,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    let variables: Vec<u32> = word.variables().into_iter().collect();
    if variables.is_empty() {
        // the empty word is 1 everywhere
        return Ok(Verdict {
            status: match mode.kind {
                ModeKind::Exhaustive => VerdictStatus::Holds,
                ModeKind::Random { trials, .. } => VerdictStatus::HoldsProbably { trials },
            },
            evaluations: 0,
        });
    }
    let one = algebra.one();
    let eval = |tuple: &[&AlgebraElement]| -> Result<Option<AlgebraElement>, EngineError> {
        let assignment = assignment_of(&variables, tuple);
        let value = word.evaluate(&assignment)?;
        Ok(nonzero(value.sub(&one)?))
    };
    let outcome = match mode.kind {
        ModeKind::Exhaustive => {
            let units = algebra.enumerate_units(mode.budget)?;
            let domains: Vec<&[AlgebraElement]> =
                variables.iter().map(|_| units.as_slice()).collect();
            quantify_exhaustive(&domains, mode.budget, eval)?
        }
        ModeKind::Random { trials, seed } => quantify_random(
            variables.len(),
            trials,
            seed,
            |_, rng| Ok(algebra.random_unit(rng, mode.height, mode.retries)?),
            eval,
        )?,
    };
    Ok(outcome_to_verdict(outcome, &variables, mode))
}

/// A multilinear generalized polynomial: for each permutation σ a list of
/// interleaved coefficient sequences α₀ x_{σ(1)} α₁ ⋯ α_{n-1} x_{σ(n)} αₙ
/// with coefficients drawn from the target algebra.
#[derive(Debug, Clone)]
pub struct GeneralizedPolynomial {
    arity: usize,
    terms: Vec<GpTerm>,
}

#[derive(Debug, Clone)]
pub struct GpTerm {
    /// 0-based permutation of {0..arity-1}.
    pub permutation: Vec<usize>,
    /// arity + 1 interleaved coefficients.
    pub coefficients: Vec<AlgebraElement>,
}

impl GeneralizedPolynomial {
    pub fn new(arity: usize, terms: Vec<GpTerm>) -> Result<Self, EngineError> {
        if arity == 0 {
            return Err(EngineError::MalformedGpi("arity must be ≥ 1".into()));
        }
        for t in &terms {
            let mut sorted = t.permutation.clone();
            sorted.sort_unstable();
            if sorted != (0..arity).collect::<Vec<_>>() {
                return Err(EngineError::MalformedGpi(format!(
                    "{:?} is not a permutation of 0..{arity}",
                    t.permutation
                )));
            }
            if t.coefficients.len() != arity + 1 {
                return Err(EngineError::MalformedGpi(format!(
                    "expected {} coefficients, got {}",
                    arity + 1,
                    t.coefficients.len()
                )));
            }
        }
        let mut descriptors = terms
            .iter()
            .flat_map(|t| t.coefficients.iter().map(|c| c.descriptor()));
        if let Some(first) = descriptors.next() {
            if descriptors.any(|d| d != first) {
                return Err(EngineError::MalformedGpi(
                    "coefficients drawn from different algebras".into(),
                ));
            }
        }
        Ok(GeneralizedPolynomial { arity, terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn eval_terms(
        terms: &[GpTerm],
        zero: &AlgebraElement,
        tuple: &[&AlgebraElement],
    ) -> Result<AlgebraElement, EngineError> {
        let mut acc = zero.clone();
        for t in terms {
            let mut prod = t.coefficients[0].clone();
            for (i, &var) in t.permutation.iter().enumerate() {
                prod = prod.mul(tuple[var])?;
                prod = prod.mul(&t.coefficients[i + 1])?;
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    pub fn evaluate(
        &self,
        algebra: &AlgebraDescriptor,
        tuple: &[&AlgebraElement],
    ) -> Result<AlgebraElement, EngineError> {
        Self::eval_terms(&self.terms, &algebra.zero(), tuple)
    }

    /// The distinct permutations appearing in the terms.
    fn permutations(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for t in &self.terms {
            if !out.contains(&t.permutation) {
                out.push(t.permutation.clone());
            }
        }
        out
    }
}

fn quantify_over_elements<F>(
    algebra: &AlgebraDescriptor,
    arity: usize,
    mode: &CheckMode,
    eval: F,
) -> Result<QuantOutcome, EngineError>
where
    F: FnMut(&[&AlgebraElement]) -> Result<Option<AlgebraElement>, EngineError>,
{
    match mode.kind {
        ModeKind::Exhaustive => {
            let pool: Vec<AlgebraElement> =
                algebra.enumerate_elements(mode.budget)?.collect();
            let domains: Vec<&[AlgebraElement]> = (0..arity).map(|_| pool.as_slice()).collect();
            quantify_exhaustive(&domains, mode.budget, eval)
        }
        ModeKind::Random { trials, seed } => quantify_random(
            arity,
            trials,
            seed,
            |_, rng| Ok(algebra.random_element(rng, mode.height)),
            eval,
        ),
    }
}

/// Checks a generalized polynomial as an identity over element tuples.
pub fn check_gpi(
    algebra: &AlgebraDescriptor,
    gp: &GeneralizedPolynomial,
    mode: &CheckMode,
) -> Result<Verdict, EngineError> {
    let variables: Vec<u32> = (1..=gp.arity as u32).collect();
    let outcome = quantify_over_elements(algebra, gp.arity, mode, |tuple| {
        Ok(nonzero(gp.evaluate(algebra, tuple)?))
    })?;
    Ok(outcome_to_verdict(outcome, &variables, mode))
}

/// Nondegeneracy: true iff some σ-component g^σ fails to vanish identically
/// (so the GPI certificate is meaningful).
pub fn is_nondegenerate(
    algebra: &AlgebraDescriptor,
    gp: &GeneralizedPolynomial,
    mode: &CheckMode,
) -> Result<bool, EngineError> {
    let zero = algebra.zero();
    for sigma in gp.permutations() {
        let component: Vec<GpTerm> = gp
            .terms
            .iter()
            .filter(|t| t.permutation == sigma)
            .cloned()
            .collect();
        let outcome = quantify_over_elements(algebra, gp.arity, mode, |tuple| {
            Ok(nonzero(GeneralizedPolynomial::eval_terms(
                &component, &zero, tuple,
            )?))
        })?;
        if matches!(outcome, QuantOutcome::Counterexample { .. }) {
            return Ok(true);
        }
    }
    Ok(false)
}
