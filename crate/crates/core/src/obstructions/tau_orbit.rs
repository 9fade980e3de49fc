//! Searching τ-orbits of projective stalks for `τ^k P_i ≅ P_i[m]`, `k, m >= 1`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::NakayamaAlgebra;
use crate::complex::{EngineError, PerfectComplex};
use crate::coxeter::{self, IntMatrix};
use crate::engine::{are_isomorphic, tau};
use crate::obstructions::certificate::{Certificate, Evidence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitConfig {
    pub max_steps: usize,
    /// Give up on a start once an iterate has more summands than this.
    pub max_terms: usize,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            max_steps: 200,
            max_terms: 400,
        }
    }
}

/// Why a start vertex produced no certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "stop", rename_all = "snake_case")]
pub enum OrbitStop {
    /// `Φ^k e_i` is never `±e_i` within the bound, so no iterate can be a
    /// shifted copy of the start.
    NoClassMatch,
    /// The orbit returned to the start with a shift that is not positive.
    /// Further iterates only repeat this shift.
    NonPositiveShift { step: usize, shift: i32 },
    /// Two iterates agree up to shift.
    Cycle { first: usize, step: usize },
    TooLarge { step: usize, terms: usize },
    Exhausted { steps: usize },
    Engine { step: usize, error: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitLog {
    pub start: usize,
    #[serde(flatten)]
    pub stop: OrbitStop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TauOrbitOutcome {
    Periodic(Certificate),
    Inconclusive(Vec<OrbitLog>),
}

/// The first `steps` iterates `τX, τ²X, ...` of the stalk `P_start`.
pub fn tau_orbit(
    a: &NakayamaAlgebra,
    start: usize,
    steps: usize,
) -> Result<Vec<PerfectComplex>, EngineError> {
    let mut x = PerfectComplex::stalk(Arc::new(a.clone()), start, 0)?;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        x = tau(&x)?;
        out.push(x.clone());
    }
    Ok(out)
}

/// Steps `k <= max_steps` with `Φ^k e_i = ±e_i`.
fn class_candidates(phi: &IntMatrix, i: usize, max_steps: usize) -> Vec<usize> {
    let n = phi.len();
    let mut v: Vec<BigInt> = (0..n).map(|k| BigInt::from(u8::from(k + 1 == i))).collect();
    let mut out = Vec::new();
    for step in 1..=max_steps {
        v = phi
            .iter()
            .map(|row| row.iter().zip(&v).map(|(&m, x)| x * m).sum())
            .collect();
        let unit = v
            .iter()
            .enumerate()
            .all(|(k, x)| if k + 1 == i { x.abs().is_one() } else { x.is_zero() });
        if unit {
            out.push(step);
        }
    }
    out
}

/// Iterates with `τ^k X ≅ X[s]` keyed by their shift-normalised terms.
struct Memo {
    seen: HashMap<Vec<(i32, usize)>, Vec<(usize, PerfectComplex)>>,
}

impl Memo {
    fn key(x: &PerfectComplex) -> Vec<(i32, usize)> {
        let lo = x.lo();
        x.term_key().into_iter().map(|(d, p)| (d - lo, p)).collect()
    }

    /// Earlier step whose iterate is isomorphic to `x` up to shift.
    fn insert(&mut self, step: usize, x: &PerfectComplex) -> Option<usize> {
        let entries = self.seen.entry(Self::key(x)).or_default();
        for (earlier, y) in entries.iter() {
            if are_isomorphic(&y.shift(y.lo() - x.lo()), x) {
                return Some(*earlier);
            }
        }
        entries.push((step, x.clone()));
        None
    }
}

fn orbit_from(
    a: &Arc<NakayamaAlgebra>,
    phi: &IntMatrix,
    start: usize,
    cfg: &OrbitConfig,
) -> Result<Evidence, OrbitStop> {
    let candidates = class_candidates(phi, start, cfg.max_steps);
    let Some(&last) = candidates.last() else {
        return Err(OrbitStop::NoClassMatch);
    };
    let engine = |step: usize| move |e: EngineError| OrbitStop::Engine {
        step,
        error: e.to_string(),
    };
    let mut x = PerfectComplex::stalk(a.clone(), start, 0).map_err(engine(0))?;
    let mut memo = Memo {
        seen: HashMap::new(),
    };
    memo.insert(0, &x);
    let mut next_candidate = candidates.iter().copied().peekable();
    for step in 1..=last {
        x = tau(&x).map_err(engine(step))?;
        if x.total_terms() > cfg.max_terms {
            return Err(OrbitStop::TooLarge {
                step,
                terms: x.total_terms(),
            });
        }
        if next_candidate.peek() == Some(&step) {
            next_candidate.next();
            if let Some((p, d)) = x.as_stalk() {
                if p == start {
                    let shift = -d;
                    if shift >= 1 {
                        return Ok(Evidence::TauPeriodic {
                            start,
                            power: step,
                            shift,
                        });
                    }
                    return Err(OrbitStop::NonPositiveShift { step, shift });
                }
            }
        }
        if let Some(first) = memo.insert(step, &x) {
            return Err(OrbitStop::Cycle { first, step });
        }
    }
    Err(OrbitStop::Exhausted { steps: last })
}

/// Scans `starts` in ascending order and returns the first certificate.
pub fn tau_orbit_test(a: &NakayamaAlgebra, starts: &[usize], cfg: &OrbitConfig) -> TauOrbitOutcome {
    let arc = Arc::new(a.clone());
    let phi = coxeter::coxeter_matrix(a);
    let mut starts = starts.to_vec();
    starts.sort_unstable();
    starts.dedup();
    let mut logs = Vec::new();
    for start in starts {
        if a.check_vertex(start).is_err() {
            logs.push(OrbitLog {
                start,
                stop: OrbitStop::Engine {
                    step: 0,
                    error: format!("vertex {start} is outside 1..={}", a.n()),
                },
            });
            continue;
        }
        match orbit_from(&arc, &phi, start, cfg) {
            Ok(evidence) => return TauOrbitOutcome::Periodic(Certificate::new(a.clone(), evidence)),
            Err(stop) => logs.push(OrbitLog { start, stop }),
        }
    }
    TauOrbitOutcome::Inconclusive(logs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, rels: &[(usize, usize)]) -> NakayamaAlgebra {
        NakayamaAlgebra::from_relations(n, rels.iter().copied()).unwrap()
    }

    fn certified(a: &NakayamaAlgebra, start: usize, steps: usize) -> Evidence {
        let cfg = OrbitConfig {
            max_steps: steps,
            ..OrbitConfig::default()
        };
        match tau_orbit_test(a, &[start], &cfg) {
            TauOrbitOutcome::Periodic(c) => c.evidence,
            TauOrbitOutcome::Inconclusive(log) => panic!("no certificate: {log:?}"),
        }
    }

    #[test]
    fn a9_from_p2() {
        let a = alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)]);
        assert_eq!(
            certified(&a, 2, 10),
            Evidence::TauPeriodic {
                start: 2,
                power: 4,
                shift: 1
            }
        );
    }

    #[test]
    fn hereditary_returns_with_negative_shift() {
        // In type A_n, τ^{n+1} = [-2].
        let a = NakayamaAlgebra::hereditary(4).unwrap();
        let cfg = OrbitConfig::default();
        let TauOrbitOutcome::Inconclusive(logs) = tau_orbit_test(&a, &[1, 2, 3, 4], &cfg) else {
            panic!("hereditary algebra certified");
        };
        assert_eq!(logs.len(), 4);
        for log in logs {
            assert!(
                matches!(log.stop, OrbitStop::NonPositiveShift { step, shift } if step <= 5 && shift <= 0),
                "{log:?}"
            );
        }
    }

    #[test]
    fn candidates_match_direct_powers() {
        for a in [
            NakayamaAlgebra::hereditary(3).unwrap(),
            NakayamaAlgebra::rad_power(11, 5).unwrap(),
            alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)]),
        ] {
            let phi = coxeter::coxeter_matrix(&a);
            for i in 1..=a.n() {
                assert_eq!(class_candidates(&phi, i, 30), candidates_brute(&phi, i, 30));
            }
        }
    }

    fn candidates_brute(phi: &IntMatrix, i: usize, steps: usize) -> Vec<usize> {
        let n = phi.len();
        let mut v: Vec<i64> = (0..n).map(|k| i64::from(k + 1 == i)).collect();
        let mut out = Vec::new();
        for s in 1..=steps {
            v = coxeter::apply(phi, &v);
            let mut e = vec![0; n];
            e[i - 1] = 1;
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            if v == e || v == neg {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn orbit_iterates() {
        let a = NakayamaAlgebra::rad_power(11, 5).unwrap();
        let orbit = tau_orbit(&a, 1, 3).unwrap();
        assert_eq!(orbit[1].render(), "deg -2: P8");
        assert_eq!(orbit[2].render(), "deg -1: P4");
    }
}
