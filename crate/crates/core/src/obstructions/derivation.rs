//! Vertex-insertion derivations of `kA_n / rad^r` from a few periodic seeds.

use thiserror::Error;

use crate::algebra::NakayamaAlgebra;
use crate::moves::{Extension, Move};
use crate::obstructions::certificate::{Certificate, Evidence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HsError {
    #[error("no derivation is tabulated for kA_{n} / rad^{r}")]
    OutOfTable { n: usize, r: usize },
}

/// Smallest `n` for which `kA_n / rad^r` has a derivation.
pub fn hs_threshold(r: usize) -> Option<usize> {
    match r {
        0..=2 => None,
        3 => Some(12),
        4 | 5 => Some(11),
        6 | 7 => Some(12),
        _ => Some(r + 5),
    }
}

fn seed_evidence(k: usize) -> Evidence {
    let power = if k == 11 { 15 } else { 21 };
    Evidence::TauPeriodic {
        start: 1,
        power,
        shift: 1,
    }
}

/// Moves from a seed `Λ(k, s)` to `Λ(n, r)`. Large powers are reached from
/// `Λ(12, 7)` by inserting a vertex in the middle of the quiver, which
/// lengthens every relation; extra vertices are then added at the front
/// together with a new relation of length `r`.
pub fn hs_derivation(n: usize, r: usize) -> Result<Certificate, HsError> {
    let out = HsError::OutOfTable { n, r };
    let threshold = hs_threshold(r).ok_or(out.clone())?;
    if n < threshold {
        return Err(out);
    }
    let (seed_n, seed_r) = match r {
        3 | 6 | 7 => (12, r),
        4 | 5 => (11, r),
        _ => (12, 7),
    };
    let mut moves = Vec::new();
    let (mut k, mut s) = (seed_n, seed_r);
    while s < r {
        moves.push(Move::Insert(s - 1, Extension::None));
        k += 1;
        s += 1;
    }
    while k < n {
        moves.push(Move::Insert(0, Extension::RelationTo(r)));
        k += 1;
    }
    let algebra = NakayamaAlgebra::rad_power(n, r).expect("n exceeds r inside the table");
    Ok(Certificate::new(
        algebra,
        Evidence::Derivation {
            seed: format!("radpow={seed_n},{seed_r}"),
            seed_evidence: Box::new(seed_evidence(seed_n)),
            moves,
        },
    ))
}
