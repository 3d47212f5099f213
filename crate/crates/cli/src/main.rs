//! `lpi` — exact-arithmetic checks for Laurent polynomial identities on the
//! unit groups of finite algebras, the f₀/f₂/f derivation pipeline, and the
//! group-algebra analysis commands.

mod report;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use lpi_core::algebras::AlgebraDescriptor;
use lpi_core::construction;
use lpi_core::engine::{self, CheckMode};
use lpi_core::groups;
use lpi_core::hartley;
use lpi_core::scalars::RingDescriptor;
use lpi_core::words;

use report::{exit_code, CliError, RunReport};

#[derive(Parser)]
#[command(
    name = "lpi",
    about = "Laurent polynomial identity toolkit: exact checks on unit groups of finite algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Quantification mode shared by the checking subcommands. Exactly one mode
/// is in effect; without --exhaustive a seeded random mode with --trials
/// samples (default 10000) runs.
#[derive(Args, Debug)]
struct ModeArgs {
    /// Quantify over all tuples (finite algebras only, within --budget).
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    /// Number of random trials.
    #[arg(long)]
    trials: Option<u64>,
    /// RNG seed; printed in every report so failures replay exactly.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluation budget; exhaustive checks abort (exit 3) when over it.
    #[arg(long, default_value_t = engine::DEFAULT_BUDGET)]
    budget: u64,
    /// Height bound for random rationals/integers (numerator, denominator).
    #[arg(long, default_value_t = 5)]
    height: u64,
    /// Worker budget. Results are deterministic regardless of this value.
    #[arg(long, default_value_t = 1)]
    jobs: u64,
}

impl ModeArgs {
    fn mode(&self) -> Result<CheckMode, CliError> {
        if self.jobs < 1 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        if self.height < 1 {
            return Err(CliError::Usage("--height must be at least 1".into()));
        }
        let mode = if self.exhaustive {
            CheckMode::exhaustive()
        } else {
            CheckMode::random(self.trials.unwrap_or(10_000), self.seed)
        };
        Ok(mode.with_budget(self.budget).with_height(self.height))
    }

    fn describe(&self) -> String {
        if self.exhaustive {
            format!("exhaustive (budget {})", self.budget)
        } else {
            format!(
                "random ({} trials, seed {})",
                self.trials.unwrap_or(10_000),
                self.seed
            )
        }
    }
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Emit the report as JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Cap on constructed group order.
    #[arg(long, default_value_t = groups::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polynomial and echo its canonical form.
    Parse {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a Laurent polynomial identity on the unit group U(A).
    CheckLpi {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a polynomial identity (no negative exponents) over all of A.
    CheckPi {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the standard polynomial Sₙ on an algebra.
    Standard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a group identity w = 1 on the unit group.
    CheckGi {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Derive f₀, f₂, f with degree data (no verification).
    Derive {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Derive and verify all three layers on a concrete algebra.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1 {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Vandermonde component extraction plus the (ab)^{2d} bound check.
    Nilpotency {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: String,
        /// Number of sampled (a, b, c, u) points for the extraction.
        #[arg(long, default_value_t = 100)]
        tuples: u64,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full group-algebra analysis of K[G].
    Hartley {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The inadmissible-LPI demonstration S₂ₙ·(x₁⋯x₂ₙ)⁻¹ on Mₙ(K).
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: String,
        /// Largest k for the power-word x₁ᵏ failure scan.
        #[arg(long, default_value_t = 10)]
        power_bound: u64,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command, started) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(command: Command, started: Instant) -> Result<u8, CliError> {
    match command {
        Command::Parse { poly, ring, common } => {
            let ring = RingDescriptor::parse(&ring).map_err(CliError::usage)?;
            let parsed = words::parse_poly(&poly, ring).map_err(CliError::usage)?;
            let mut report = RunReport::new("parse", started);
            report.input("poly", &poly);
            report.input("ring", &ring.to_string());
            report.extra(
                "canonical",
                serde_json::json!({
                    "text": parsed.to_string(),
                    "terms": parsed.num_terms(),
                    "variables": parsed.variables().into_iter().collect::<Vec<_>>(),
                    "admissible": parsed.admissibility().admissible,
                }),
            );
            report.line(format!("canonical: {parsed}"));
            report.line(format!("terms: {}", parsed.num_terms()));
            report.finish(common.json, 0)
        }
        Command::CheckLpi {
            algebra,
            poly,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let parsed = words::parse_poly(&poly, desc.ring()).map_err(CliError::usage)?;
            let m = mode.mode()?;
            let verdict = engine::check_lpi(&desc, &parsed, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("check-lpi", started);
            report.input("algebra", &algebra);
            report.input("poly", &parsed.to_string());
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            let code = u8::from(!verdict.holds());
            report.verdict("lpi", &verdict);
            report.finish(common.json, code)
        }
        Command::CheckPi {
            algebra,
            poly,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let parsed = words::parse_poly(&poly, desc.ring()).map_err(CliError::usage)?;
            let m = mode.mode()?;
            let verdict = engine::check_pi(&desc, &parsed, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("check-pi", started);
            report.input("algebra", &algebra);
            report.input("poly", &parsed.to_string());
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            let code = u8::from(!verdict.holds());
            report.verdict("pi", &verdict);
            report.finish(common.json, code)
        }
        Command::Standard {
            n,
            algebra,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let m = mode.mode()?;
            let verdict = engine::check_standard(&desc, n, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("standard", started);
            report.input("n", &n.to_string());
            report.input("algebra", &algebra);
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            let code = u8::from(!verdict.holds());
            report.verdict(&format!("S{n}"), &verdict);
            report.finish(common.json, code)
        }
        Command::CheckGi {
            algebra,
            word,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let w = words::parse_word(&word).map_err(CliError::usage)?;
            let m = mode.mode()?;
            let verdict =
                engine::check_group_identity(&desc, &w, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("check-gi", started);
            report.input("algebra", &algebra);
            report.input("word", &w.to_string());
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            let code = u8::from(!verdict.holds());
            report.verdict("gi", &verdict);
            report.finish(common.json, code)
        }
        Command::Derive { poly, ring, common } => {
            let ring = RingDescriptor::parse(&ring).map_err(CliError::usage)?;
            let parsed = words::parse_poly(&poly, ring).map_err(CliError::usage)?;
            let derived = construction::derive(&parsed).map_err(CliError::engine)?;
            let mut report = RunReport::new("derive", started);
            report.input("poly", &parsed.to_string());
            report.input("ring", &ring.to_string());
            report.describe_construction(&derived);
            report.finish(common.json, 0)
        }
        Command::VerifyTheorem1 {
            algebra,
            poly,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let parsed = words::parse_poly(&poly, desc.ring()).map_err(CliError::usage)?;
            let m = mode.mode()?;
            let verify =
                construction::verify_construction(&desc, &parsed, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("verify-theorem1", started);
            report.input("algebra", &algebra);
            report.input("poly", &parsed.to_string());
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            report.describe_construction(&verify.construction);
            report.verdict("premise", &verify.premise);
            if verify.vacuous {
                report.line(
                    "premise fails: the derived layers below are vacuous as predictions"
                        .to_string(),
                );
                report.extra("vacuous", serde_json::json!(true));
            }
            report.verdict("f2_layer", &verify.f2_layer);
            report.verdict("f_layer", &verify.f_layer);
            let all_hold =
                verify.premise.holds() && verify.f2_layer.holds() && verify.f_layer.holds();
            report.finish(common.json, u8::from(!all_hold))
        }
        Command::Nilpotency {
            algebra,
            poly,
            tuples,
            mode,
            common,
        } => {
            let desc = parse_algebra(&algebra, common.max_order)?;
            let parsed = words::parse_poly(&poly, desc.ring()).map_err(CliError::usage)?;
            let m = mode.mode()?;
            run_nilpotency(&algebra, desc, parsed, tuples, m, &mode, common, started)
        }
        Command::Hartley {
            group,
            field,
            mode,
            common,
        } => {
            let g = groups::parse_group_spec(&group, common.max_order)
                .map_err(CliError::usage)?;
            let ring = RingDescriptor::parse(&field).map_err(CliError::usage)?;
            if !ring.is_field() {
                return Err(CliError::Usage(
                    "the analysis needs a field: q or gf<p>".into(),
                ));
            }
            let m = mode.mode()?;
            let analysis =
                hartley::analyze(&Arc::new(g), ring, &m).map_err(CliError::engine)?;
            let mut report = RunReport::new("hartley", started);
            report.input("group", &group);
            report.input("field", &field);
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            report.describe_hartley(&analysis);
            let code = u8::from(!analysis.all_predictions_hold());
            report.finish(common.json, code)
        }
        Command::Counterexample {
            n,
            field,
            power_bound,
            mode,
            common,
        } => {
            let ring = RingDescriptor::parse(&field).map_err(CliError::usage)?;
            let m = mode.mode()?;
            let demo = hartley::counterexample_demo(n, ring, &m, power_bound)
                .map_err(CliError::engine)?;
            let mut report = RunReport::new("counterexample", started);
            report.input("n", &n.to_string());
            report.input("field", &field);
            report.input("mode", &mode.describe());
            report.seed = mode.seed;
            report.describe_counterexample(&demo);
            // the demonstration succeeds when the inadmissible LPI holds;
            // the scan's failures are its expected content
            let code = u8::from(!demo.lpi.holds());
            report.finish(common.json, code)
        }
    }
}

fn parse_algebra(spec: &str, max_order: usize) -> Result<AlgebraDescriptor, CliError> {
    AlgebraDescriptor::parse(spec, max_order).map_err(CliError::usage)
}

#[allow(clippy::too_many_arguments)]
fn run_nilpotency(
    algebra_spec: &str,
    desc: AlgebraDescriptor,
    parsed: words::LaurentPolynomial,
    tuples: u64,
    m: CheckMode,
    mode: &ModeArgs,
    common: CommonArgs,
    started: Instant,
) -> Result<u8, CliError> {
    use rand::SeedableRng as _;
    let derived = construction::derive(&parsed).map_err(CliError::engine)?;
    let mut report = RunReport::new("nilpotency", started);
    report.input("algebra", algebra_spec);
    report.input("poly", &parsed.to_string());
    report.input("mode", &mode.describe());
    report.input("tuples", &tuples.to_string());
    report.seed = mode.seed;
    report.describe_construction(&derived);

    let mut failed = false;

    // Vandermonde extraction over sampled precondition points. Small fields
    // cannot supply d distinct nonzero points; that is reported, not fatal.
    match lpi_core::scalars::distinct_scalars(desc.ring(), derived.d as usize) {
        Err(e) => {
            report.line(format!("vandermonde: skipped ({e})"));
            report.extra("vandermonde_skipped", serde_json::json!(e.to_string()));
        }
        Ok(_) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(mode.seed);
            let mut all_zero = true;
            let mut power_zero = true;
            let mut checked = 0u64;
            for _ in 0..tuples {
                let a = desc
                    .random_square_zero(&mut rng, m.height, m.retries)
                    .map_err(CliError::engine)?;
                let (b, c) = desc
                    .random_zero_divisor_pair(&mut rng, m.height, m.retries)
                    .map_err(CliError::engine)?;
                let u = desc.random_element(&mut rng, m.height);
                match construction::vandermonde_extract(&desc, &derived.f, &a, &b, &c, &u) {
                    Ok(r) => {
                        checked += 1;
                        power_zero &= r.bacu_power_zero;
                    }
                    Err(construction::ConstructionError::VandermondeInconsistent {
                        component,
                        value,
                    }) => {
                        all_zero = false;
                        report.line(format!(
                            "vandermonde: component p_{component} nonzero: {value}"
                        ));
                        break;
                    }
                    Err(e) => return Err(CliError::engine(e)),
                }
            }
            report.extra(
                "vandermonde",
                serde_json::json!({
                    "points_checked": checked,
                    "all_components_zero": all_zero,
                    "bacu_power_zero": power_zero,
                }),
            );
            report.line(format!(
                "vandermonde: {checked} points, components all zero: {all_zero}, (bacu)^d = 0: {power_zero}"
            ));
            failed |= !all_zero || !power_zero;
        }
    }

    let c2 = construction::square_zero_pair_bound(&desc, derived.d, &m)
        .map_err(CliError::engine)?;
    report.verdict("c2_bound", &c2.verdict);
    report.extra(
        "c2",
        serde_json::json!({
            "case": match c2.case {
                construction::BoundCase::LargeField => "large-field",
                construction::BoundCase::NilpotentFilter => "nilpotent-filter",
            },
            "bound": c2.bound,
            "max_index_observed": c2.max_index_observed,
            "pairs_checked": c2.pairs_checked,
            "outside_both_cases": c2.neither_case.len(),
        }),
    );
    report.line(format!(
        "c2 bound 2d = {}: max nilpotency index observed {:?} over {} pairs ({} outside both cases)",
        c2.bound, c2.max_index_observed, c2.pairs_checked, c2.neither_case.len()
    ));
    failed |= !c2.verdict.holds();
    report.finish(common.json, u8::from(failed))
}
