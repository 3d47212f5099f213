//! The group-algebra analysis pipeline at finite-group scale: semiprimeness,
//! averaging-idempotent centrality, Dedekind classification, an index-2
//! abelian subgroup search, the S₄ check, and the inadmissible-LPI
//! counterexample demonstration with its group-identity failure scan.

use std::sync::Arc;

use crate::algebras::{AlgebraDescriptor, AlgebraElement, AlgebraError, SemiprimeReport};
use crate::construction::{self, ConstructionError};
use crate::engine::{
    check_group_identity, check_lpi, check_standard, standard_polynomial, CheckMode,
    EngineError, Verdict,
};
use crate::groups::{FiniteGroup, GroupClassification};
use crate::scalars::RingDescriptor;
use crate::words::{GroupWord, LaurentPolynomial};

/// Companion S₂ check and full idempotent scans are enabled only below
/// these sizes.
const S2_COMPANION_MAX_ORDER: usize = 10;
const IDEMPOTENT_SCAN_MAX_ELEMENTS: u128 = 1 << 12;

/// Whether one averaging idempotent ĝ = n⁻¹(1 + g + ⋯ + gⁿ⁻¹) is central,
/// or why it was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdempotentStatus {
    Central,
    NotCentral,
    /// The element order is not invertible in the field.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct IdempotentCheck {
    pub element: usize,
    pub name: String,
    pub order: usize,
    pub status: IdempotentStatus,
}

/// Exhaustive scan over all idempotents of a small group algebra.
#[derive(Debug, Clone)]
pub struct IdempotentScan {
    pub idempotent_count: usize,
    pub noncentral: Vec<String>,
}

#[derive(Debug)]
pub struct HartleyReport {
    pub group_order: usize,
    pub field: RingDescriptor,
    pub semiprime: SemiprimeReport,
    /// |φ(G)| — all of G for a finite group.
    pub fc_size: usize,
    /// |φ′(G)| = |G′|.
    pub fc_derived_size: usize,
    /// For finite G the second horn of the finiteness dichotomy holds
    /// automatically; recorded for transparency.
    pub dichotomy_note: String,
    pub idempotents: Vec<IdempotentCheck>,
    pub idempotent_scan: Option<IdempotentScan>,
    pub classification: GroupClassification,
    pub index2_abelian: Option<Vec<usize>>,
    pub s4: Verdict,
    /// S₂ over the GF(2) companion algebra, run when the group is abelian
    /// and small enough for the exhaustive pass.
    pub s2_companion: Option<Verdict>,
    /// Falsification events; empty when every prediction checked out.
    pub consistency: Vec<String>,
}

impl HartleyReport {
    pub fn all_predictions_hold(&self) -> bool {
        self.consistency.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group_order": self.group_order,
            "field": self.field.to_string(),
            "semiprime": self.semiprime.semiprime,
            "semiprime_reason": self.semiprime.reason.to_string(),
            "fc_size": self.fc_size,
            "fc_derived_size": self.fc_derived_size,
            "dichotomy_note": self.dichotomy_note,
            "idempotents": self.idempotents.iter().map(|c| serde_json::json!({
                "element": c.element,
                "name": c.name,
                "order": c.order,
                "status": match c.status {
                    IdempotentStatus::Central => "central",
                    IdempotentStatus::NotCentral => "not-central",
                    IdempotentStatus::Skipped => "skipped (order not invertible)",
                },
            })).collect::<Vec<_>>(),
            "idempotent_scan": self.idempotent_scan.as_ref().map(|s| serde_json::json!({
                "idempotent_count": s.idempotent_count,
                "noncentral": s.noncentral,
            })),
            "classification": self.classification.to_string(),
            "index2_abelian_subgroup": self.index2_abelian,
            "s4": self.s4.summary(),
            "s2_companion": self.s2_companion.as_ref().map(|v| v.summary()),
            "consistency_flags": self.consistency,
        })
    }
}

/// Runs the full pipeline for K[G].
pub fn analyze(
    group: &Arc<FiniteGroup>,
    field: RingDescriptor,
    mode: &CheckMode,
) -> Result<HartleyReport, EngineError> {
    let algebra = AlgebraDescriptor::group_algebra(group.clone(), field);
    let semiprime = algebra.semiprime_group_algebra()?;
    let fc = group.fc_subgroup();
    let fc_derived = group.derived_subgroup(&fc);

    let mut idempotents = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let order = group.order_of(g);
        let status = match algebra.averaging_idempotent(g) {
            Ok(ghat) => {
                debug_assert!(ghat.is_idempotent());
                if ghat.is_central() {
                    IdempotentStatus::Central
                } else {
                    IdempotentStatus::NotCentral
                }
            }
            Err(AlgebraError::OrderNotInvertible { .. }) => IdempotentStatus::Skipped,
            Err(e) => return Err(e.into()),
        };
        idempotents.push(IdempotentCheck {
            element: g,
            name: group.name(g).to_string(),
            order,
            status,
        });
    }

    let idempotent_scan = match algebra.element_count() {
        Some(count) if count <= IDEMPOTENT_SCAN_MAX_ELEMENTS => {
            let mut idempotent_count = 0;
            let mut noncentral = Vec::new();
            for el in algebra.enumerate_elements(IDEMPOTENT_SCAN_MAX_ELEMENTS as u64)? {
                if el.is_idempotent() {
                    idempotent_count += 1;
                    if !el.is_central() {
                        noncentral.push(el.to_string());
                    }
                }
            }
            Some(IdempotentScan {
                idempotent_count,
                noncentral,
            })
        }
        _ => None,
    };

    let classification = group.classify();
    let index2_abelian = group
        .find_abelian_index2_subgroup()
        .map(|s| s.into_iter().collect::<Vec<_>>());
    let s4 = check_standard(&algebra, 4, mode)?;

    let s2_companion = if classification == GroupClassification::Abelian
        && group.order() <= S2_COMPANION_MAX_ORDER
    {
        let companion =
            AlgebraDescriptor::group_algebra(group.clone(), RingDescriptor::PrimeField(2));
        Some(check_standard(&companion, 2, &CheckMode::exhaustive())?)
    } else {
        None
    };

    let mut consistency = Vec::new();
    let dedekind = matches!(
        classification,
        GroupClassification::Abelian | GroupClassification::Hamiltonian
    );
    // ĝ is central exactly when ⟨g⟩ is normal: the mechanical form of the
    // step from central idempotents to normal cyclic subgroups. Holds for
    // every group; a mismatch is an implementation failure.
    for check in &idempotents {
        if check.status == IdempotentStatus::Skipped {
            continue;
        }
        let cyclic = group.cyclic_subgroup(check.element);
        let normal = group.is_subgroup_normal(&cyclic);
        let central = check.status == IdempotentStatus::Central;
        if central != normal {
            consistency.push(format!(
                "FALSIFIED: averaging idempotent of element {} ({}) is {}central but ⟨g⟩ is {}normal",
                check.element,
                check.name,
                if central { "" } else { "not " },
                if normal { "" } else { "not " },
            ));
        }
    }
    // the centrality prediction applies where the unit group can satisfy an
    // admissible LPI, i.e. for Dedekind groups; elsewhere the per-element
    // verdicts are data, not falsifications
    if semiprime.semiprime && dedekind {
        for check in &idempotents {
            if check.status == IdempotentStatus::NotCentral {
                consistency.push(format!(
                    "FALSIFIED: semiprime group algebra of a Dedekind group has a non-central averaging idempotent at element {} ({})",
                    check.element, check.name
                ));
            }
        }
        if let Some(scan) = &idempotent_scan {
            if !scan.noncentral.is_empty() {
                consistency.push(format!(
                    "FALSIFIED: semiprime group algebra of a Dedekind group has {} non-central idempotents in the exhaustive scan",
                    scan.noncentral.len()
                ));
            }
        }
    }
    if dedekind && !s4.holds() {
        consistency.push(
            "FALSIFIED: abelian or Hamiltonian group whose group algebra fails S₄".to_string(),
        );
    }

    Ok(HartleyReport {
        group_order: group.order(),
        field,
        semiprime,
        fc_size: fc.len(),
        fc_derived_size: fc_derived.len(),
        dichotomy_note: format!(
            "finite group: [G : φ(G)] = 1 and |φ′(G)| = {} is finite, so the finiteness horn of the dichotomy holds automatically",
            fc_derived.len()
        ),
        idempotents,
        idempotent_scan,
        classification,
        index2_abelian,
        s4,
        s2_companion,
        consistency,
    })
}

/// The witness pair a = e₂₁, b = e₁₂ with b·a = e₁₁.
#[derive(Debug)]
pub struct BaWitness {
    pub ba: AlgebraElement,
    pub idempotent: bool,
    pub nilpotent: bool,
}

#[derive(Debug)]
pub struct GiScanEntry {
    pub word: GroupWord,
    pub description: String,
    pub verdict: Verdict,
}

/// The inadmissible-LPI demonstration around S₂ₙ·(x₁⋯x₂ₙ)⁻¹.
#[derive(Debug)]
pub struct CounterexampleReport {
    pub n: usize,
    pub field: RingDescriptor,
    pub poly: LaurentPolynomial,
    pub admissible: bool,
    pub nonconstant_words: usize,
    pub offenders: usize,
    /// The LPI check of the inadmissible polynomial on GLₙ — expected to
    /// hold (the hypothesis, not the conclusion, fails).
    pub lpi: Verdict,
    /// Whether the derivation pipeline rejected the polynomial.
    pub normalization_rejected: bool,
    pub ba_witness: BaWitness,
    /// Candidate group identities, each expected to fail with a witness.
    pub gi_scan: Vec<GiScanEntry>,
}

impl CounterexampleReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "field": self.field.to_string(),
            "poly_terms": self.poly.num_terms(),
            "admissible": self.admissible,
            "nonconstant_words": self.nonconstant_words,
            "offending_words": self.offenders,
            "lpi": self.lpi.summary(),
            "normalization_rejected": self.normalization_rejected,
            "ba": self.ba_witness.ba.to_string(),
            "ba_idempotent": self.ba_witness.idempotent,
            "ba_nilpotent": self.ba_witness.nilpotent,
            "gi_scan": self.gi_scan.iter().map(|e| serde_json::json!({
                "word": e.word.to_string(),
                "kind": e.description,
                "verdict": e.verdict.summary(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds S₂ₙ·(x₁⋯x₂ₙ)⁻¹: an LPI of Mₙ whose nonconstant words all have
/// zero exponent sum in every variable.
pub fn inadmissible_lpi(n: usize) -> Result<LaurentPolynomial, EngineError> {
    let s2n = standard_polynomial(2 * n)?;
    let product = GroupWord::from_syllables((1..=2 * n as u32).map(|v| (v, 1i64)));
    Ok(s2n.mul_word(&product.inverse()))
}

/// Candidate group identities for the failure scan: the commutator, the
/// power words x₁ᵏ for k = 1…`power_bound`, and the 2-Engel word.
fn gi_candidates(power_bound: u64) -> Vec<(GroupWord, String)> {
    let x1 = GroupWord::generator(1);
    let x2 = GroupWord::generator(2);
    let commutator = |a: &GroupWord, b: &GroupWord| {
        a.multiply(b).multiply(&a.inverse()).multiply(&b.inverse())
    };
    let mut out = vec![(
        commutator(&x1, &x2),
        "commutator [x1, x2]".to_string(),
    )];
    for k in 1..=power_bound {
        out.push((
            GroupWord::power(1, k as i64),
            format!("power word x1^{k}"),
        ));
    }
    let engel = commutator(&commutator(&x1, &x2), &x2);
    out.push((engel, "Engel word [[x1, x2], x2]".to_string()));
    out
}

/// Runs the demonstration on Mₙ(field).
pub fn counterexample_demo(
    n: usize,
    field: RingDescriptor,
    mode: &CheckMode,
    power_bound: u64,
) -> Result<CounterexampleReport, EngineError> {
    if n < 2 {
        return Err(EngineError::MalformedGpi(
            "the demonstration needs n ≥ 2".into(),
        ));
    }
    let poly = inadmissible_lpi(n)?;
    let diagnosis = poly.admissibility();
    let nonconstant_words = poly
        .terms()
        .keys()
        .filter(|w| !w.is_identity())
        .count();

    let algebra = AlgebraDescriptor::matrix(n, field);
    let lpi = check_lpi(&algebra, &poly, mode)?;

    let normalization_rejected = matches!(
        construction::derive(&poly),
        Err(ConstructionError::NotAdmissible { .. })
    );

    let a = algebra.matrix_unit(1, 0)?; // e₂₁
    let b = algebra.matrix_unit(0, 1)?; // e₁₂
    let ba = b.mul(&a)?;
    let ba_witness = BaWitness {
        idempotent: ba.is_idempotent(),
        nilpotent: ba.is_nilpotent(),
        ba,
    };

    let mut gi_scan = Vec::new();
    for (word, description) in gi_candidates(power_bound) {
        let verdict = check_group_identity(&algebra, &word, mode)?;
        gi_scan.push(GiScanEntry {
            word,
            description,
            verdict,
        });
    }

    Ok(CounterexampleReport {
        n,
        field,
        poly,
        admissible: diagnosis.admissible,
        nonconstant_words,
        offenders: diagnosis.offenders.len(),
        lpi,
        normalization_rejected,
        ba_witness,
        gi_scan,
    })
}

#[cfg(test)]
mod tests;
