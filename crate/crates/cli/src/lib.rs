//! Argument parsing helpers and the survey runner behind the `nakayama` binary.

use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, Context};
use nakayama_core::coxeter::coefficients_json;
use nakayama_core::{battery, coxeter, enumerate_algebras, BatteryConfig, NakayamaAlgebra, Verdict};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub mod table;

/// Which class of failure ended a command. Each maps to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Malformed,
    Precondition,
    OutOfTable,
    Io,
}

impl FailureKind {
    pub fn exit_code(self) -> u8 {
        match self {
            FailureKind::Malformed => 2,
            FailureKind::Precondition => 3,
            FailureKind::OutOfTable => 4,
            FailureKind::Io => 1,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: FailureKind,
    pub error: anyhow::Error,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub trait FailWith<T> {
    fn fail_as(self, kind: FailureKind) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> FailWith<T> for Result<T, E> {
    fn fail_as(self, kind: FailureKind) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            kind,
            error: e.into(),
        })
    }
}

/// Parses an algebra argument: any text form the core accepts, or
/// `@path` naming a JSON file.
pub fn parse_algebra(spec: &str) -> Result<NakayamaAlgebra, Failure> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {path}"))
            .fail_as(FailureKind::Malformed)?,
        None => spec.to_string(),
    };
    text.parse::<NakayamaAlgebra>()
        .with_context(|| format!("invalid algebra {spec:?}"))
        .fail_as(FailureKind::Malformed)
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRecord {
    pub v: u32,
    pub index: usize,
    pub algebra: String,
    pub kupisch: Vec<usize>,
    pub coxeter: Vec<serde_json::Value>,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Excluded from the canonical form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl SurveyRecord {
    pub fn compute(index: usize, a: &NakayamaAlgebra, cfg: &BatteryConfig) -> Self {
        let t = Instant::now();
        let verdict = battery(a, cfg);
        let coxeter = coefficients_json(&coxeter(a).polynomial);
        SurveyRecord {
            v: SCHEMA_VERSION,
            index,
            algebra: a.to_string(),
            kupisch: a.to_kupisch().values().to_vec(),
            coxeter,
            verdict,
            wall_ms: Some(t.elapsed().as_secs_f64() * 1e3),
        }
    }

    pub fn canonical_line(&self) -> String {
        let mut canonical = self.clone();
        canonical.wall_ms = None;
        serde_json::to_string(&canonical).expect("records serialise")
    }
}

/// Drops the wall time from a stored line, leaving the canonical form.
fn canonical_of_stored(line: &str) -> anyhow::Result<(usize, String, String)> {
    let value: serde_json::Value = serde_json::from_str(line)?;
    let obj = value
        .as_object()
        .ok_or_else(|| anyhow!("record is not an object"))?;
    if obj.get("v").and_then(|v| v.as_u64()) != Some(u64::from(SCHEMA_VERSION)) {
        return Err(anyhow!("unsupported record version"));
    }
    let index = obj
        .get("index")
        .and_then(|i| i.as_u64())
        .ok_or_else(|| anyhow!("record has no index"))? as usize;
    let algebra = obj
        .get("algebra")
        .and_then(|a| a.as_str())
        .ok_or_else(|| anyhow!("record has no algebra"))?
        .to_string();
    Ok((index, algebra, strip_wall_time(line)))
}

/// `wall_ms` is always the last field of a stored record.
fn strip_wall_time(line: &str) -> String {
    match line.rfind(",\"wall_ms\":") {
        Some(at) if line.ends_with('}') => format!("{}}}", &line[..at]),
        _ => line.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub n: usize,
    pub jobs: usize,
    pub battery: BatteryConfig,
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveySummary {
    pub records: usize,
    pub resumed: usize,
    pub flagged: Vec<String>,
    /// SHA-256 of the canonical lines, each followed by a newline.
    pub digest: String,
}

/// Reads the complete records already present in `path`, checks them
/// against the enumeration and truncates any partial trailing line.
fn load_existing(path: &Path, expected: &[NakayamaAlgebra]) -> anyhow::Result<Vec<String>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut canonical = Vec::new();
    let mut keep_bytes = 0u64;
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 || !line.ends_with('\n') {
            break;
        }
        let body = line.trim_end_matches('\n');
        let (index, algebra, c) = canonical_of_stored(body)
            .with_context(|| format!("{}: record {}", path.display(), canonical.len() + 1))?;
        let k = canonical.len();
        match expected.get(k) {
            Some(a) if index == k && algebra == a.to_string() => {}
            _ => {
                return Err(anyhow!(
                    "{}: record {} does not belong to this survey",
                    path.display(),
                    k + 1
                ))
            }
        }
        canonical.push(c);
        keep_bytes += read as u64;
    }
    let file = OpenOptions::new().write(true).open(path)?;
    file.set_len(keep_bytes)?;
    Ok(canonical)
}

/// Runs the battery over every algebra on `n` vertices and appends one JSON
/// line per algebra to `out`, in enumeration order. Records already in the
/// file are kept and skipped.
pub fn run_survey(cfg: &SurveyConfig, out: &Path) -> anyhow::Result<SurveySummary> {
    let algebras: Vec<NakayamaAlgebra> = enumerate_algebras(cfg.n).collect();
    let mut canonical = load_existing(out, &algebras)?;
    let resumed = canonical.len();
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .with_context(|| format!("opening {}", out.display()))?;
    let mut writer = BufWriter::new(file);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()?;
    let chunk = cfg.jobs.max(1) * 16;
    let todo: Vec<(usize, &NakayamaAlgebra)> = algebras.iter().enumerate().skip(resumed).collect();
    for batch in todo.chunks(chunk) {
        let records: Vec<SurveyRecord> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(k, a)| SurveyRecord::compute(k, a, &cfg.battery))
                .collect()
        });
        for mut r in records {
            let line = r.canonical_line();
            if !cfg.timings {
                r.wall_ms = None;
            }
            let stored = serde_json::to_string(&r)?;
            writeln!(writer, "{stored}")?;
            canonical.push(line);
        }
        writer.flush()?;
    }

    let mut hasher = Sha256::new();
    let mut flagged = Vec::new();
    for (line, a) in canonical.iter().zip(&algebras) {
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
        if line.contains("\"verdict\":\"non_piecewise_hereditary\"") {
            flagged.push(a.to_string());
        }
    }
    let digest = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(SurveySummary {
        records: canonical.len(),
        resumed,
        flagged,
        digest,
    })
}
