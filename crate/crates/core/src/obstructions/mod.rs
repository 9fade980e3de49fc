//! One-sided tests for non-piecewise-heredity and the certificates they emit.

pub mod certificate;
pub mod coarse_fine;
pub mod derivation;
pub mod patterns;
pub mod tau_orbit;

use serde::Serialize;

use crate::algebra::NakayamaAlgebra;
use certificate::{Certificate, Evidence};
use coarse_fine::{coarse_fine_sequences, merged_terms, CoarseFine};
use tau_orbit::{tau_orbit_test, OrbitConfig, OrbitLog, TauOrbitOutcome};

pub type BatteryConfig = OrbitConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NonPiecewiseHereditary { certificates: Vec<Certificate> },
    Inconclusive { diagnostics: Vec<String> },
}

impl Verdict {
    pub fn is_flagged(&self) -> bool {
        matches!(self, Verdict::NonPiecewiseHereditary { .. })
    }

    pub fn certificates(&self) -> &[Certificate] {
        match self {
            Verdict::NonPiecewiseHereditary { certificates } => certificates,
            Verdict::Inconclusive { .. } => &[],
        }
    }
}

/// Coarse/fine evidence, or why the test did not fire.
pub fn coarse_fine_test(a: &NakayamaAlgebra) -> Result<Certificate, String> {
    match coarse_fine_sequences(a) {
        CoarseFine::Inapplicable => Err("coarse/fine: no relation of length at least three".into()),
        CoarseFine::Computed(r) if r.fires => {
            let mut coarse = r.c.clone();
            coarse.push(1);
            let cone_terms = merged_terms(&coarse, &r.f);
            Ok(Certificate::new(
                a.clone(),
                Evidence::CoarseFine {
                    c: r.c,
                    f: r.f,
                    cone_terms,
                },
            ))
        }
        CoarseFine::Computed(r) => Err(format!(
            "coarse/fine: {}",
            r.diagnostic.unwrap_or_else(|| "did not fire".into())
        )),
    }
}

fn describe(log: &OrbitLog) -> String {
    format!(
        "tau orbit of P{}: {}",
        log.start,
        serde_json::to_string(&log.stop).expect("orbit logs serialise")
    )
}

/// Runs every test and collects all certificates. Never claims piecewise
/// heredity.
pub fn battery(a: &NakayamaAlgebra, cfg: &BatteryConfig) -> Verdict {
    let mut certificates = Vec::new();
    let mut diagnostics = Vec::new();
    let pattern = |e: Option<Evidence>| e.map(|e| Certificate::new(a.clone(), e));
    match pattern(patterns::pattern_overlap_six(a)) {
        Some(c) => certificates.push(c),
        None => diagnostics.push("overlap-six: no witness".to_string()),
    }
    match pattern(patterns::pattern_sandwich(a)) {
        Some(c) => certificates.push(c),
        None => diagnostics.push("sandwich: no witness".to_string()),
    }
    match coarse_fine_test(a) {
        Ok(c) => certificates.push(c),
        Err(d) => diagnostics.push(d),
    }
    let starts: Vec<usize> = (1..=a.n()).collect();
    match tau_orbit_test(a, &starts, cfg) {
        TauOrbitOutcome::Periodic(c) => certificates.push(c),
        TauOrbitOutcome::Inconclusive(logs) => diagnostics.extend(logs.iter().map(describe)),
    }
    if certificates.is_empty() {
        Verdict::Inconclusive { diagnostics }
    } else {
        Verdict::NonPiecewiseHereditary { certificates }
    }
}
