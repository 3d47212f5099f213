//! Acceptance suite: one test per criterion, each printing a pass line with
//! its wall-clock time. Library-level criteria run in-process; criteria
//! phrased as command lines drive the compiled binary.

use std::collections::BTreeMap;
use std::process::{Command, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lpi_core::algebras::AlgebraDescriptor;
use lpi_core::construction::{
    self, derive, sample_admissible_poly, square_zero_pair_bound, vandermonde_extract,
    verify_construction,
};
use lpi_core::engine::{self, check_lpi, check_pi, CheckMode, Verdict, VerdictStatus};
use lpi_core::groups::build_group;
use lpi_core::hartley;
use lpi_core::scalars::{distinct_scalars, RingDescriptor, Scalar};
use lpi_core::words::{parse_poly, LaurentPolynomial};

const Q: RingDescriptor = RingDescriptor::Rationals;
const GF2: RingDescriptor = RingDescriptor::PrimeField(2);
const GF3: RingDescriptor = RingDescriptor::PrimeField(3);
const GF7: RingDescriptor = RingDescriptor::PrimeField(7);

fn lpi_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is JSON: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn report_pass(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{criterion}: took {elapsed:?}, over the {budget:?} budget"
    );
    println!("[acceptance] {criterion}: PASS in {} ms", elapsed.as_millis());
}

fn exhaustive() -> CheckMode {
    CheckMode::exhaustive()
}

#[test]
fn criterion_1_amitsur_levitzki() {
    let started = Instant::now();

    let out = lpi_bin(&[
        "standard", "--n", "2", "--algebra", "matrix:1:gf3", "--exhaustive", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdicts"][0]["status"]["kind"], "holds");

    let t = Instant::now();
    let out = lpi_bin(&[
        "standard", "--n", "4", "--algebra", "matrix:2:gf2", "--exhaustive", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdicts"][0]["status"]["kind"], "holds");
    assert_eq!(v["verdicts"][0]["evaluations"], 65536);
    assert!(t.elapsed() < Duration::from_secs(60), "S4 on M2(F2) over 60 s");

    let t = Instant::now();
    let out = lpi_bin(&[
        "standard", "--n", "4", "--algebra", "matrix:3:gf2", "--trials", "10000", "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdicts"][0]["status"]["kind"], "fails");
    assert!(t.elapsed() < Duration::from_secs(10), "S4 on M3(F2) over 10 s");

    // verify the witness by replaying the same seeded check in-process and
    // evaluating the assignment
    let m3 = AlgebraDescriptor::matrix(3, GF2);
    let verdict = engine::check_standard(&m3, 4, &CheckMode::random(10_000, 0)).unwrap();
    let witness = verdict.witness().expect("replay fails identically");
    let s4 = engine::standard_polynomial(4).unwrap();
    let assignment: BTreeMap<u32, _> = witness.assignment.iter().cloned().collect();
    let value = s4.evaluate(&assignment).unwrap();
    assert!(!value.is_zero());
    assert_eq!(value, witness.value);

    report_pass("criterion 1 (Amitsur-Levitzki)", started, Duration::from_secs(70));
}

fn assert_criterion_2_case(
    algebra: &AlgebraDescriptor,
    poly_text: &str,
    ring: RingDescriptor,
    expected_lr: i64,
) {
    let poly = parse_poly(poly_text, ring).unwrap();
    let report = verify_construction(algebra, &poly, &exhaustive()).unwrap();
    let c = &report.construction;
    assert_eq!((c.l, c.r), (expected_lr, expected_lr));
    assert_eq!(c.f2.degree().unwrap(), 2 * expected_lr + 1);
    assert_eq!(c.degree_bound_f2, 2 * expected_lr + 1);
    assert_eq!(c.d, 4 * expected_lr + 3);
    assert_eq!(c.degree_bound_f, 4 * expected_lr + 3);
    assert!(c.f.coefficient(0).is_zero());
    assert!(c.f2.coefficient(0).is_zero());
    assert!(c.f2.coefficient(1).is_zero(), "linear coefficient of f2");
    assert!(matches!(report.premise.status, VerdictStatus::Holds));
    assert!(matches!(report.f2_layer.status, VerdictStatus::Holds));
    assert!(matches!(report.f_layer.status, VerdictStatus::Holds));
    assert!(!report.vacuous);
}

#[test]
fn criterion_2_theorem_end_to_end() {
    let started = Instant::now();

    let t3 = AlgebraDescriptor::triangular(3, GF2);
    assert_criterion_2_case(&t3, "1 - x1^4", GF2, 4);

    let t2 = AlgebraDescriptor::triangular(2, GF3);
    assert_criterion_2_case(&t2, "1 - x1^6", GF3, 6);

    // the CLI surface agrees
    let out = lpi_bin(&[
        "verify-theorem1", "--algebra", "tri:3:gf2", "--poly", "1 - x1^4", "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));

    report_pass("criterion 2 (theorem end-to-end)", started, Duration::from_secs(120));
}

#[test]
fn criterion_3_symbolic_numeric_consistency() {
    let started = Instant::now();
    let t4 = AlgebraDescriptor::triangular(4, GF7);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 200 {
        let poly = sample_admissible_poly(&mut rng, GF7, 3, 6);
        let report = match derive(&poly) {
            Ok(r) => r,
            Err(construction::ConstructionError::AllNonconstantCancelled) => continue,
            Err(e) => panic!("derivation failed on {poly}: {e}"),
        };
        checked += 1;
        let deg_f1 = report.f1.degree().unwrap();
        assert!(report.f2.degree().unwrap() <= 2 * deg_f1 + 1, "f2 bound on {poly}");
        assert!(report.d <= 4 * deg_f1 + 3, "f bound on {poly}");
        assert!(
            report.f.coeffs().keys().all(|e| e % 2 == 1),
            "odd support on {poly}"
        );
        for _ in 0..50 {
            let a = t4.random_square_zero(&mut rng, 5, 10_000).unwrap();
            let b = t4.random_square_zero(&mut rng, 5, 10_000).unwrap();
            let u = t4.random_element(&mut rng, 5);
            let aua = a.mul(&u).unwrap().mul(&a).unwrap();
            let bauab = b.mul(&aua).unwrap().mul(&b).unwrap();
            let alpha = t4
                .one()
                .add(&aua)
                .unwrap()
                .mul(&t4.one().add(&bauab).unwrap())
                .unwrap();
            let lhs = a
                .mul(&b)
                .unwrap()
                .mul(&report.f1.evaluate_at(&alpha).unwrap())
                .unwrap()
                .mul(&a.mul(&u).unwrap())
                .unwrap();
            let abau = a.mul(&b).unwrap().mul(&a).unwrap().mul(&u).unwrap();
            let rhs = report.f2.evaluate_at(&abau).unwrap();
            assert_eq!(lhs, rhs, "numeric identity failed on {poly}");
        }
    }
    report_pass(
        "criterion 3 (symbolic/numeric consistency, 200 polynomials x 50 triples)",
        started,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_4_vandermonde_extraction() {
    let started = Instant::now();
    let t3 = AlgebraDescriptor::triangular(3, Q);
    let poly = parse_poly("1 - x1^4", Q).unwrap();
    let f = derive(&poly).unwrap().f;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let a = t3.random_square_zero(&mut rng, 5, 10_000).unwrap();
        let (b, c) = t3.random_zero_divisor_pair(&mut rng, 5, 10_000).unwrap();
        let u = t3.random_element(&mut rng, 5);
        let report = vandermonde_extract(&t3, &f, &a, &b, &c, &u)
            .expect("all components must vanish");
        assert!(report.components.iter().all(|p| p.is_zero()));
        assert!(report.bacu_power_zero, "(bacu)^d must be 0");
    }

    // solver cross-validation: g(λ·s) must reconstruct cᵢ·sⁱ per power
    for _ in 0..100 {
        let degree = rng.random_range(1..=6);
        let mut g = construction::UnivariatePoly::zero(Q);
        for e in 1..=degree {
            g.add_coeff(e, Scalar::from_i64(Q, rng.random_range(-4..=4)));
        }
        if g.is_zero() {
            continue;
        }
        let d = g.degree().unwrap();
        let s = t3.random_element(&mut rng, 5);
        let lambdas = distinct_scalars(Q, d as usize).unwrap();
        let values: Vec<_> = lambdas
            .iter()
            .map(|l| g.evaluate_at(&s.scalar_mul(l).unwrap()).unwrap())
            .collect();
        let components =
            construction::solve_power_components(&t3, &lambdas, &values).unwrap();
        for i in 1..=d {
            let expected = s.pow(i as u64).scalar_mul(&g.coefficient(i)).unwrap();
            assert_eq!(components[i as usize - 1], expected);
        }
    }
    report_pass(
        "criterion 4 (Vandermonde extraction, 100 points + 100 solver cross-checks)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_square_zero_pair_bound() {
    let started = Instant::now();
    // d values from the criterion-2 derivations
    for (algebra, d) in [
        (AlgebraDescriptor::triangular(3, GF2), 19),
        (AlgebraDescriptor::triangular(2, GF3), 27),
    ] {
        let report = square_zero_pair_bound(&algebra, d, &exhaustive()).unwrap();
        assert!(report.verdict.holds(), "bound fails on {algebra}");
        let max = report.max_index_observed.expect("pairs were checked");
        assert!(max as i64 <= 2 * d);
        assert!(max <= 3, "observed index {max} above 3");
        assert!(report.neither_case.is_empty());
    }
    report_pass("criterion 5 (square-zero pair bound)", started, Duration::from_secs(30));
}

#[test]
fn criterion_6_hartley_pipeline() {
    let started = Instant::now();

    let out = lpi_bin(&["hartley", "--group", "q8", "--field", "gf3", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let h = &v["hartley"];
    assert_eq!(h["semiprime"], true);
    assert_eq!(h["classification"], "Hamiltonian");
    let idems = h["idempotents"].as_array().unwrap();
    assert_eq!(idems.len(), 8);
    assert!(idems.iter().all(|c| c["status"] == "central"));
    assert!(!h["index2_abelian_subgroup"].is_null());
    assert_eq!(v["verdicts"][0]["name"], "s4");
    assert_eq!(v["verdicts"][0]["status"]["kind"], "holds-probably");
    assert_eq!(v["verdicts"][0]["status"]["trials"], 10000);
    assert_eq!(h["consistency_flags"].as_array().unwrap().len(), 0);

    let out = lpi_bin(&["hartley", "--group", "c6", "--field", "q", "--trials", "500", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["hartley"]["classification"], "abelian");
    let s2 = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "s2_companion")
        .expect("companion S2 runs for small abelian groups");
    assert_eq!(s2["status"]["kind"], "holds");
    assert_eq!(s2["evaluations"], 4096);

    report_pass("criterion 6 (hartley pipeline)", started, Duration::from_secs(120));
}

#[test]
fn criterion_7_remark_reproduction() {
    let started = Instant::now();

    let out = lpi_bin(&["counterexample", "--n", "2", "--field", "gf2", "--exhaustive", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let c = &v["counterexample"];
    // 24 terms: the identity permutation's word collapses to the constant;
    // every one of the 23 nonconstant words is diagnosed inadmissible
    assert_eq!(c["poly_terms"], 24);
    assert_eq!(c["admissible"], false);
    assert_eq!(c["nonconstant_words"], 23);
    assert_eq!(c["offending_words"], 23);
    assert_eq!(c["normalization_rejected"], true);
    assert_eq!(c["ba_idempotent"], true);
    assert_eq!(c["ba_nilpotent"], false);
    let lpi_verdict = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "lpi")
        .unwrap();
    assert_eq!(lpi_verdict["status"]["kind"], "holds");
    assert_eq!(lpi_verdict["evaluations"], 1296); // 6⁴ unit tuples

    // the GI failure scan of the criterion targets GL₂(F₅): the commutator
    // and x1^k for k = 1…10 all fail with witnesses
    let out = lpi_bin(&[
        "counterexample", "--n", "2", "--field", "gf5", "--trials", "2000",
        "--power-bound", "10", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let scan = v["counterexample"]["gi_scan"].as_array().unwrap();
    assert_eq!(scan.len(), 12); // commutator + 10 powers + Engel
    for entry in scan {
        assert!(
            entry["verdict"].as_str().unwrap().starts_with("Fails"),
            "{} must fail on GL2(F5)",
            entry["kind"]
        );
    }

    report_pass("criterion 7 (remark reproduction)", started, Duration::from_secs(60));
}

#[test]
fn criterion_8_engine_coherence() {
    let started = Instant::now();
    let commutator = "1 - x1*x2*x1^-1*x2^-1";
    // (algebra, polynomial, lpi?) — every finite algebra with ≤ 2¹²
    // elements exercised above, with the identity checked on it there
    let cases: Vec<(AlgebraDescriptor, LaurentPolynomial, bool)> = vec![
        (
            AlgebraDescriptor::triangular(2, GF2),
            parse_poly("1 - x1^2", GF2).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::triangular(3, GF2),
            parse_poly("1 - x1^4", GF2).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::triangular(3, GF2),
            parse_poly("1 - x1^2", GF2).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::triangular(2, GF3),
            parse_poly("1 - x1^6", GF3).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::matrix(1, GF3),
            parse_poly("x1*x2 - x2*x1", GF3).unwrap(),
            false,
        ),
        (
            AlgebraDescriptor::matrix(2, GF2),
            engine::standard_polynomial(4).unwrap().embed(GF2).unwrap(),
            false,
        ),
        (
            AlgebraDescriptor::matrix(2, GF2),
            parse_poly(commutator, GF2).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::matrix(2, GF2),
            hartley::inadmissible_lpi(2).unwrap().embed(GF2).unwrap(),
            true,
        ),
        (
            AlgebraDescriptor::group_algebra(
                Arc::new(build_group("c6").unwrap()),
                GF2,
            ),
            engine::standard_polynomial(2).unwrap().embed(GF2).unwrap(),
            false,
        ),
        (
            AlgebraDescriptor::matrix(2, RingDescriptor::PrimeField(5)),
            parse_poly(commutator, RingDescriptor::PrimeField(5)).unwrap(),
            true,
        ),
    ];
    for (algebra, poly, on_units) in &cases {
        assert!(
            algebra.element_count().unwrap() <= (1 << 12),
            "scope guard: {algebra}"
        );
        let check = |mode: &CheckMode| -> Verdict {
            if *on_units {
                check_lpi(algebra, poly, mode).unwrap()
            } else {
                check_pi(algebra, poly, mode).unwrap()
            }
        };
        let exhaustive_verdict = check(&exhaustive());
        for seed in 0..20 {
            let random_verdict = check(&CheckMode::random(1000, seed));
            if !random_verdict.holds() {
                assert!(
                    !exhaustive_verdict.holds(),
                    "seed {seed} found a witness on {algebra} where the exhaustive scan holds"
                );
                // every random witness must genuinely falsify
                let w = random_verdict.witness().unwrap();
                let assignment: BTreeMap<u32, _> = w.assignment.iter().cloned().collect();
                assert!(!poly.evaluate(&assignment).unwrap().is_zero());
            }
            if exhaustive_verdict.holds() {
                assert!(
                    random_verdict.holds(),
                    "seed {seed} contradicts the exhaustive verdict on {algebra}"
                );
            }
        }
    }
    report_pass("criterion 8 (engine coherence, 20 seeds)", started, Duration::from_secs(120));
}
