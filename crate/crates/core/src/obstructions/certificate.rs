//! Machine-checkable evidence that an algebra is not piecewise hereditary.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{NakayamaAlgebra, Relation};
use crate::complex::{EngineError, PerfectComplex};
use crate::engine::{tau, two_strand_indecomposable};
use crate::moves::Move;
use crate::obstructions::coarse_fine::{self, coarse_fine_sequences, CoarseFine};
use crate::obstructions::patterns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn reject<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Rejected(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `τ^power(P_start) ≅ P_start[shift]`.
    TauPeriodic {
        start: usize,
        power: usize,
        shift: i32,
    },
    /// Coarse and fine sequences whose merged complex gives a forbidden path.
    /// `cone_terms` lists the summands of the merged two-strand complex, one
    /// entry per degree starting from the shared head.
    CoarseFine {
        c: Vec<usize>,
        f: Vec<usize>,
        cone_terms: Vec<Vec<usize>>,
    },
    PatternOverlapSix {
        alpha: Relation,
        beta: Relation,
    },
    PatternSandwich {
        alpha: Relation,
        beta: Relation,
        left: Relation,
        right: Relation,
    },
    ThreeBlocks {
        left: Vec<Relation>,
        alpha: Relation,
        beta: Relation,
        right: Vec<Relation>,
    },
    /// Replaying `moves` from the seed algebra, itself certified by
    /// `seed_evidence`, yields the certified algebra.
    Derivation {
        seed: String,
        seed_evidence: Box<Evidence>,
        moves: Vec<Move>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "algebra_text")]
    pub algebra: NakayamaAlgebra,
    #[serde(flatten)]
    pub evidence: Evidence,
}

mod algebra_text {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::algebra::NakayamaAlgebra;

    pub fn serialize<S: Serializer>(a: &NakayamaAlgebra, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&a.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<NakayamaAlgebra, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl Certificate {
    pub fn new(algebra: NakayamaAlgebra, evidence: Evidence) -> Self {
        Certificate { algebra, evidence }
    }

    /// Re-checks the evidence from scratch.
    pub fn verify(&self) -> Result<(), VerifyError> {
        verify_evidence(&self.algebra, &self.evidence)
    }
}

fn has_relation(a: &NakayamaAlgebra, r: &Relation) -> Result<(), VerifyError> {
    if a.relations().contains(r) {
        Ok(())
    } else {
        reject(format!("{r} is not a relation of {a}"))
    }
}

pub fn verify_evidence(a: &NakayamaAlgebra, evidence: &Evidence) -> Result<(), VerifyError> {
    match evidence {
        Evidence::TauPeriodic {
            start,
            power,
            shift,
        } => {
            if *power < 1 || *shift < 1 {
                return reject("power and shift must both be positive");
            }
            let mut x = PerfectComplex::stalk(Arc::new(a.clone()), *start, 0)?;
            for _ in 0..*power {
                x = tau(&x)?;
            }
            if !x.is_stalk_shift(*start, *shift) {
                return reject(format!(
                    "tau^{power}(P{start}) is {}, not P{start}[{shift}]",
                    x.render()
                ));
            }
            Ok(())
        }
        Evidence::CoarseFine { c, f, cone_terms } => {
            let CoarseFine::Computed(r) = coarse_fine_sequences(a) else {
                return reject("the coarse/fine construction does not apply");
            };
            if &r.c != c || &r.f != f {
                return reject("sequences differ from the construction");
            }
            if f.len() < c.len() + 2 {
                return reject("fine sequence is not two longer than the coarse one");
            }
            let mut coarse = c.clone();
            coarse.push(1);
            if !two_strand_indecomposable(a, &coarse, f)? {
                return reject("strands do not intertwine");
            }
            if cone_terms != &coarse_fine::merged_terms(&coarse, f) {
                return reject("cone terms do not match the strands");
            }
            if coarse_fine::forbidden_path_shift(a, &coarse, f)?.is_none() {
                return reject("no path P1[i] -> C -> P1 through the merged complex");
            }
            Ok(())
        }
        Evidence::PatternOverlapSix { alpha, beta } => {
            has_relation(a, alpha)?;
            has_relation(a, beta)?;
            if !patterns::overlap_six_holds(a, alpha, beta) {
                return reject("overlap-six conditions fail");
            }
            Ok(())
        }
        Evidence::PatternSandwich {
            alpha,
            beta,
            left,
            right,
        } => {
            for r in [alpha, beta, left, right] {
                has_relation(a, r)?;
            }
            if !patterns::sandwich_holds(a, alpha, beta, left, right) {
                return reject("sandwich conditions fail");
            }
            Ok(())
        }
        Evidence::ThreeBlocks {
            left,
            alpha,
            beta,
            right,
        } => {
            for r in left.iter().chain(right).chain([alpha, beta]) {
                has_relation(a, r)?;
            }
            if !patterns::three_blocks_holds(left, alpha, beta, right) {
                return reject("three-block conditions fail");
            }
            Ok(())
        }
        Evidence::Derivation {
            seed,
            seed_evidence,
            moves,
        } => {
            let seed_alg: NakayamaAlgebra = seed
                .parse()
                .map_err(|e| VerifyError::Rejected(format!("bad seed {seed:?}: {e}")))?;
            if matches!(**seed_evidence, Evidence::Derivation { .. }) {
                return reject("nested derivations are not accepted");
            }
            verify_evidence(&seed_alg, seed_evidence)?;
            let mut current = seed_alg;
            for m in moves {
                if matches!(m, Move::Remove(_)) {
                    return reject("vertex removal does not transport the obstruction");
                }
                current = m
                    .apply(&current)
                    .map_err(|e| VerifyError::Rejected(format!("move {m} failed: {e}")))?;
            }
            if &current != a {
                return reject(format!("replay ends at {current}, not {a}"));
            }
            Ok(())
        }
    }
}
