//! Report assembly and rendering: one `RunReport` per invocation, printed
//! as human-readable text or as JSON with the documented schema
//! `{command, inputs, seed, verdicts, construction, witnesses, stats}`.
//!
//! JSON output is byte-identical for identical argv + seed, so `elapsed_ms`
//! is reported as null there; wall-clock timing only appears in text mode.

use std::fmt;
use std::time::Instant;

use lpi_core::construction::ConstructionReport;
use lpi_core::engine::{Verdict, VerdictStatus};
use lpi_core::hartley::{CounterexampleReport, HartleyReport, IdempotentStatus};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparseable specs: exit 2.
    Usage(String),
    /// The computation itself refused (too large, not admissible, …): exit 3.
    Engine(String),
}

impl CliError {
    pub fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn engine(e: impl fmt::Display) -> Self {
        CliError::Engine(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Engine(m) => write!(f, "{m}"),
        }
    }
}

pub fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Usage(_) => 2,
        CliError::Engine(_) => 3,
    }
}

pub struct RunReport {
    command: String,
    started: Instant,
    pub seed: u64,
    inputs: Vec<(String, String)>,
    verdicts: Vec<(String, Verdict)>,
    construction: Option<serde_json::Value>,
    extras: Vec<(String, serde_json::Value)>,
    lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, started: Instant) -> Self {
        RunReport {
            command: command.to_string(),
            started,
            seed: 0,
            inputs: Vec::new(),
            verdicts: Vec::new(),
            construction: None,
            extras: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: &str) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn verdict(&mut self, name: &str, verdict: &Verdict) {
        self.lines.push(format!("{name}: {}", verdict.summary()));
        self.verdicts.push((name.to_string(), verdict.clone()));
    }

    pub fn extra(&mut self, key: &str, value: serde_json::Value) {
        self.extras.push((key.to_string(), value));
    }

    pub fn line(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn describe_construction(&mut self, report: &ConstructionReport) {
        self.lines.push(format!(
            "derivation: l = {}, r = {}, shift = {}, deg f2 = {} (bound {}), d = deg f = {} (bound {})",
            report.l,
            report.r,
            report.shift,
            report.f2.degree().unwrap_or(0),
            report.degree_bound_f2,
            report.d,
            report.degree_bound_f,
        ));
        if let Some(n) = report.normalization {
            self.lines
                .push(format!("normalization: x{} ↦ x{}^{}", n.variable, n.variable, n.k));
        }
        self.lines.push(format!("f0: {}", report.f0));
        self.lines.push(format!("f2: {}", report.f2));
        self.lines.push(format!("f:  {}", report.f));
        for w in &report.warnings {
            self.lines.push(format!("warning: {w}"));
        }
        self.construction = Some(report.to_json());
    }

    pub fn describe_hartley(&mut self, analysis: &HartleyReport) {
        self.lines.push(format!(
            "group of order {}, field {}",
            analysis.group_order, analysis.field
        ));
        self.lines.push(format!(
            "semiprime: {} — {}",
            analysis.semiprime.semiprime, analysis.semiprime.reason
        ));
        self.lines.push(format!(
            "FC-subgroup: order {} with derived subgroup of order {}",
            analysis.fc_size, analysis.fc_derived_size
        ));
        self.lines.push(analysis.dichotomy_note.clone());
        self.lines
            .push(format!("classification: {}", analysis.classification));
        let central = analysis
            .idempotents
            .iter()
            .filter(|c| c.status == IdempotentStatus::Central)
            .count();
        let skipped = analysis
            .idempotents
            .iter()
            .filter(|c| c.status == IdempotentStatus::Skipped)
            .count();
        self.lines.push(format!(
            "averaging idempotents: {central} central, {} non-central, {skipped} skipped of {}",
            analysis.idempotents.len() - central - skipped,
            analysis.idempotents.len()
        ));
        if let Some(scan) = &analysis.idempotent_scan {
            self.lines.push(format!(
                "idempotent scan: {} idempotents, {} non-central",
                scan.idempotent_count,
                scan.noncentral.len()
            ));
        }
        match &analysis.index2_abelian {
            Some(sub) => self
                .lines
                .push(format!("index-2 abelian subgroup: {sub:?}")),
            None => self.lines.push("index-2 abelian subgroup: none".into()),
        }
        self.lines.push(format!("S4: {}", analysis.s4.summary()));
        if let Some(v) = &analysis.s2_companion {
            self.lines
                .push(format!("S2 over GF(2) companion: {}", v.summary()));
        }
        for flag in &analysis.consistency {
            self.lines.push(flag.clone());
        }
        if analysis.all_predictions_hold() {
            self.lines.push("all predictions hold".into());
        }
        self.verdicts.push(("s4".into(), analysis.s4.clone()));
        if let Some(v) = &analysis.s2_companion {
            self.verdicts.push(("s2_companion".into(), v.clone()));
        }
        self.extras
            .push(("hartley".into(), analysis.to_json()));
    }

    pub fn describe_counterexample(&mut self, demo: &CounterexampleReport) {
        self.lines.push(format!(
            "polynomial: S{}·(x1⋯x{})⁻¹ with {} terms",
            2 * demo.n,
            2 * demo.n,
            demo.poly.num_terms()
        ));
        self.lines.push(format!(
            "admissible: {} ({} of {} nonconstant words have zero exponent sum in every variable)",
            demo.admissible, demo.offenders, demo.nonconstant_words
        ));
        self.lines.push(format!(
            "derivation rejected as not admissible: {}",
            demo.normalization_rejected
        ));
        self.lines.push(format!(
            "b·a = {} for a = e21, b = e12: idempotent = {}, nilpotent = {}",
            demo.ba_witness.ba, demo.ba_witness.idempotent, demo.ba_witness.nilpotent
        ));
        self.verdicts.push(("lpi".into(), demo.lpi.clone()));
        self.lines.push(format!("lpi: {}", demo.lpi.summary()));
        for entry in &demo.gi_scan {
            self.lines.push(format!(
                "gi scan — {}: {}",
                entry.description,
                entry.verdict.summary()
            ));
            self.verdicts
                .push((format!("gi:{}", entry.word), entry.verdict.clone()));
        }
        self.extras.push(("counterexample".into(), demo.to_json()));
    }

    fn witnesses_json(&self) -> serde_json::Value {
        let list: Vec<serde_json::Value> = self
            .verdicts
            .iter()
            .filter_map(|(name, v)| {
                v.witness().map(|w| {
                    serde_json::json!({
                        "verdict": name,
                        "assignment": w.assignment.iter().map(|(var, el)| {
                            serde_json::json!({"variable": format!("x{var}"), "element": el.to_string()})
                        }).collect::<Vec<_>>(),
                        "value": w.value.to_string(),
                        "trial": w.trial,
                        "seed": w.seed,
                    })
                })
            })
            .collect();
        serde_json::Value::Array(list)
    }

    fn to_json(&self) -> serde_json::Value {
        let verdicts: Vec<serde_json::Value> = self
            .verdicts
            .iter()
            .map(|(name, v)| {
                let status = match &v.status {
                    VerdictStatus::Holds => serde_json::json!({"kind": "holds"}),
                    VerdictStatus::HoldsProbably { trials } => {
                        serde_json::json!({"kind": "holds-probably", "trials": trials})
                    }
                    VerdictStatus::Fails { .. } => serde_json::json!({"kind": "fails"}),
                };
                serde_json::json!({
                    "name": name,
                    "status": status,
                    "evaluations": v.evaluations,
                })
            })
            .collect();
        let inputs: serde_json::Map<String, serde_json::Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let mut root = serde_json::json!({
            "command": self.command,
            "inputs": inputs,
            "seed": self.seed,
            "verdicts": verdicts,
            "construction": self.construction,
            "witnesses": self.witnesses_json(),
            "stats": {
                "evaluations": self.verdicts.iter().map(|(_, v)| v.evaluations).sum::<u64>(),
                "elapsed_ms": serde_json::Value::Null,
            },
        });
        for (k, v) in &self.extras {
            root.as_object_mut()
                .expect("root is an object")
                .insert(k.clone(), v.clone());
        }
        root
    }

    /// Prints the report and returns the exit code.
    pub fn finish(self, json: bool, code: u8) -> Result<u8, CliError> {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.to_json()).expect("serializable"));
        } else {
            println!("command: {}", self.command);
            for (k, v) in &self.inputs {
                println!("{k}: {v}");
            }
            println!("seed: {}", self.seed);
            for line in &self.lines {
                println!("{line}");
            }
            for (name, v) in &self.verdicts {
                if let Some(w) = v.witness() {
                    let assign: Vec<String> = w
                        .assignment
                        .iter()
                        .map(|(var, el)| format!("x{var} = {el}"))
                        .collect();
                    println!("witness[{name}]: {} -> {}", assign.join(", "), w.value);
                }
            }
            println!("elapsed: {} ms", self.started.elapsed().as_millis());
        }
        Ok(code)
    }
}
